//! Exact real-root counting for real polynomials and the coefficient-ratio
//! criteria that bound it.
//!
//! Everything that decides a root count is exact rational arithmetic. The
//! only floating point values are the reporting-only log coordinates.

pub mod analysis;
pub mod conjectures;
pub mod constructions;
pub mod criteria;
pub mod error;
pub mod logmap;
pub mod oracle;
pub mod poly;
pub mod qseq;
pub mod rational;
pub mod text;
pub mod trig;

pub use analysis::{analyze, AnalysisReport};
pub use conjectures::{ConjectureId, ConjectureReport};
pub use constructions::{Family, FamilySpec};
pub use criteria::{BoundCertificate, Criterion, Direction};
pub use error::{Error, Result};
pub use logmap::{ConeSpec, LogPoint};
pub use oracle::{count_real_roots, RootReport};
pub use poly::Poly;
pub use qseq::{q_sequence, QSeq};
pub use rational::Rational;
pub use trig::CertifiedConstant;
