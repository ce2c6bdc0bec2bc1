use thiserror::Error;

use crate::poly::Poly;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degree {degree} is too small, need at least {required}")]
    DegreeTooSmall { degree: usize, required: usize },
    #[error("scale factors must be nonzero")]
    InvalidScale,
    /// Reversal of a polynomial with vanishing constant term; the reversed
    /// polynomial is still carried so callers can inspect it.
    #[error("reversal drops the degree (constant term is zero)")]
    DegreeDrop { reversed: Poly },
    #[error("invalid q-sequence: {0}")]
    InvalidQSequence(String),
    #[error("segment [{lo}, {hi}] out of range for degree {degree}")]
    IndexError { lo: usize, hi: usize, degree: usize },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("empty or reversed interval")]
    BadInterval,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("bad cone spec: {0}")]
    BadSpec(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}
