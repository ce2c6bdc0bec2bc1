//! Coefficient-ratio criteria. Each test returns a [`BoundCertificate`]
//! whose witnesses are exact inequalities that re-evaluate to true.

mod anya;
mod ratio;
mod sum;

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::rational::{self, Rational};

pub use anya::{cor_anya_lower_bound, prop_anya_points, AnyaPoint};
pub use ratio::{
    hutchinson_test, newton_necessary, theorem_a_test, theorem_b_test, theorem_d_test,
    theorem_e_test, theorem_f_test,
};
pub use sum::{
    corollary1_test, corollary2_any, corollary2_sweep, corollary2_test, theorem1_bound,
    theorem1_sum_test, theorem3_4_sum_check, theorem3_bound, theorem4_bound, EvenFactorForm,
    FactorForm, MarginCertificate, OddFactorForm, QuadraticPair,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Criterion {
    HutchinsonH,
    NewtonN,
    ThmA,
    ThmB,
    ThmD,
    ThmE,
    ThmF,
    Thm1,
    Cor1,
    Cor2,
    Thm3,
    Thm4,
    PropAnya,
    CorAnya,
}

/// What a fired certificate says about the real root count `r` of a degree
/// `n` polynomial with bound `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    /// `r <= b`
    UpperBound,
    /// `r >= b`
    LowerBound,
    /// `r == b`
    ExactCount,
    /// `r == n`, and for Hutchinson every coefficient segment is real-rooted.
    RealRootedness,
    /// `P > 0` on the real line, `r == 0`.
    Positivity,
    /// A necessary condition for real-rootedness failed: `r <= n - 2`.
    NecessaryFailed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl Relation {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        let ord = lhs.cmp(rhs);
        match self {
            Relation::Lt => ord == Ordering::Less,
            Relation::Le => ord != Ordering::Greater,
            Relation::Gt => ord == Ordering::Greater,
            Relation::Ge => ord != Ordering::Less,
            Relation::Eq => ord == Ordering::Equal,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Gt => ">",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        }
    }
}

/// `lhs relation rhs` at a coefficient index (0 when the inequality is not
/// tied to a single index, e.g. a sum of two ratios).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub index: usize,
    pub label: String,
    #[serde(with = "rational::serde_str")]
    pub lhs: Rational,
    #[serde(with = "rational::serde_str")]
    pub rhs: Rational,
    pub relation: Relation,
}

impl Witness {
    pub fn new(index: usize, label: impl Into<String>, lhs: Rational, relation: Relation, rhs: Rational) -> Self {
        Witness { index, label: label.into(), lhs, rhs, relation }
    }

    pub fn q(index: usize, lhs: Rational, relation: Relation, rhs: Rational) -> Self {
        Self::new(index, format!("q_{index}"), lhs, relation, rhs)
    }

    pub fn holds(&self) -> bool {
        self.relation.holds(&self.lhs, &self.rhs)
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = {} {} {}",
            self.label,
            rational::to_string(&self.lhs),
            self.relation.symbol(),
            rational::to_string(&self.rhs)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCertificate {
    pub criterion: Criterion,
    pub direction: Direction,
    pub degree: usize,
    /// Present only on fired certificates.
    pub bound: Option<usize>,
    pub witnesses: Vec<Witness>,
    pub applicable: bool,
    pub fired: bool,
    /// Some comparison fell inside a threshold enclosure; raising the
    /// precision may resolve it.
    pub indeterminate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl BoundCertificate {
    pub(crate) fn not_applicable(criterion: Criterion, direction: Direction, degree: usize, reason: impl Into<String>) -> Self {
        BoundCertificate {
            criterion,
            direction,
            degree,
            bound: None,
            witnesses: Vec::new(),
            applicable: false,
            fired: false,
            indeterminate: false,
            reason: Some(reason.into()),
        }
    }

    pub(crate) fn fired(criterion: Criterion, direction: Direction, degree: usize, bound: usize, witnesses: Vec<Witness>) -> Self {
        BoundCertificate {
            criterion,
            direction,
            degree,
            bound: Some(bound),
            witnesses,
            applicable: true,
            fired: true,
            indeterminate: false,
            reason: None,
        }
    }

    pub(crate) fn silent(criterion: Criterion, direction: Direction, degree: usize, witnesses: Vec<Witness>) -> Self {
        BoundCertificate {
            criterion,
            direction,
            degree,
            bound: None,
            witnesses,
            applicable: true,
            fired: false,
            indeterminate: false,
            reason: None,
        }
    }

    pub(crate) fn undecided(criterion: Criterion, direction: Direction, degree: usize, witnesses: Vec<Witness>) -> Self {
        BoundCertificate {
            indeterminate: true,
            reason: Some("comparison inside the threshold enclosure; raise precision".into()),
            ..Self::silent(criterion, direction, degree, witnesses)
        }
    }

    /// The range `[lo, hi]` of real root counts (with multiplicity) this
    /// certificate allows, or `None` when it did not fire.
    pub fn root_range(&self) -> Option<(usize, usize)> {
        if !self.fired {
            return None;
        }
        let n = self.degree;
        let b = self.bound?;
        Some(match self.direction {
            Direction::UpperBound | Direction::NecessaryFailed => (0, b),
            Direction::LowerBound => (b, n),
            Direction::ExactCount => (b, b),
            Direction::RealRootedness => (n, n),
            Direction::Positivity => (0, 0),
        })
    }

    /// True unless the certificate fired with a range excluding `roots`.
    pub fn consistent_with(&self, roots: usize) -> bool {
        match self.root_range() {
            Some((lo, hi)) => lo <= roots && roots <= hi,
            None => true,
        }
    }

    pub fn witnesses_hold(&self) -> bool {
        self.witnesses.iter().all(Witness::holds)
    }
}

/// Outcome of comparing an exact value against a certified threshold.
pub(crate) enum Strict {
    Below(Witness),
    NotBelow(Witness),
    Unknown(Witness),
}

/// Decides `value < threshold` for `threshold` in `[lower, upper]`.
pub(crate) fn strictly_below(index: usize, value: &Rational, lower: &Rational, upper: &Rational) -> Strict {
    if value < lower {
        Strict::Below(Witness::q(index, value.clone(), Relation::Lt, lower.clone()))
    } else if value >= upper {
        Strict::NotBelow(Witness::q(index, value.clone(), Relation::Ge, upper.clone()))
    } else {
        Strict::Unknown(Witness::q(index, value.clone(), Relation::Ge, lower.clone()))
    }
}

/// Applies a family of strict `q_index < threshold` tests: fires when all
/// hold, stays silent when one certainly fails, undecided otherwise.
pub(crate) fn all_strictly_below(
    criterion: Criterion,
    direction: Direction,
    degree: usize,
    bound: usize,
    checks: Vec<Strict>,
) -> BoundCertificate {
    let mut below = Vec::new();
    let mut failed = Vec::new();
    let mut unknown = Vec::new();
    for c in checks {
        match c {
            Strict::Below(w) => below.push(w),
            Strict::NotBelow(w) => failed.push(w),
            Strict::Unknown(w) => unknown.push(w),
        }
    }
    if !failed.is_empty() {
        BoundCertificate::silent(criterion, direction, degree, failed)
    } else if !unknown.is_empty() {
        BoundCertificate::undecided(criterion, direction, degree, unknown)
    } else {
        BoundCertificate::fired(criterion, direction, degree, bound, below)
    }
}
