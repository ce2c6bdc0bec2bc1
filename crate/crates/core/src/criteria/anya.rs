use std::cmp::Ordering;

use serde::Serialize;

use super::{BoundCertificate, Criterion, Direction, Relation, Witness};
use crate::error::{Error, Result};
use crate::oracle::sign_changes_by;
use crate::poly::Poly;
use crate::qseq::q_at;
use crate::rational::{self, int, Rational};

const WITNESS_BITS: u32 = 64;

/// A sign witness for an index with `q_j >= 4`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnyaPoint {
    pub index: usize,
    /// Open interval `(-a_j/a_{j+1}, -a_{j-1}/a_j)` holding the witness.
    #[serde(with = "rational::serde_str")]
    pub interval_lo: Rational,
    #[serde(with = "rational::serde_str")]
    pub interval_hi: Rational,
    /// Rational enclosure of the witness `-sqrt(a_{j-1}/a_{j+1})`.
    #[serde(with = "rational::serde_str")]
    pub witness_lo: Rational,
    #[serde(with = "rational::serde_str")]
    pub witness_hi: Rational,
    /// `(-1)^j`, the claimed sign side.
    pub expected_sign: i8,
    /// Exact sign of `P` at the witness.
    pub value_sign: i8,
    /// `expected_sign * value_sign >= 0`.
    pub verified: bool,
}

fn ord_sign(o: Ordering) -> i8 {
    match o {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Exact sign of `p(-sqrt(r))` for `r > 0`, writing `p(x) = E(x^2) + x O(x^2)`
/// so that the value is `E(r) - sqrt(r) O(r)`.
pub(crate) fn sign_at_neg_sqrt(p: &Poly, r: &Rational) -> i8 {
    let even = Poly::new(p.coeffs().iter().step_by(2).cloned().collect());
    let odd = Poly::new(p.coeffs().iter().skip(1).step_by(2).cloned().collect());
    let e = even.eval(r);
    let o = odd.eval(r);
    let zero = int(0);
    // sign(e - sqrt(r) o)
    match (e.cmp(&zero), o.cmp(&zero)) {
        (Ordering::Equal, os) => -ord_sign(os),
        (es, Ordering::Equal) => ord_sign(es),
        (Ordering::Greater, Ordering::Less) => 1,
        (Ordering::Less, Ordering::Greater) => -1,
        (es, _) => {
            // same signs: compare e^2 with r o^2
            let c = (&e * &e).cmp(&(r * &o * &o));
            ord_sign(es) * ord_sign(c)
        }
    }
}

fn hypothesis(p: &Poly) -> Result<()> {
    if p.is_zero() || p.degree() < 2 || !p.all_positive() {
        return Err(Error::NotApplicable("requires degree >= 2 and all coefficients strictly positive".into()));
    }
    let one = int(1);
    for k in 1..p.degree() {
        let q = q_at(p, k).unwrap();
        if q < one {
            return Err(Error::NotApplicable(format!("q_{k} = {} < 1", rational::to_string(&q))));
        }
    }
    Ok(())
}

/// For each `j` with `q_j >= 4`, the witness point where `(-1)^j P >= 0`.
pub fn prop_anya_points(p: &Poly) -> Result<Vec<AnyaPoint>> {
    hypothesis(p)?;
    let four = int(4);
    let a = p.coeffs();
    let mut out = Vec::new();
    for j in 1..p.degree() {
        if q_at(p, j).unwrap() < four {
            continue;
        }
        let r = &a[j - 1] / &a[j + 1];
        let (slo, shi) = rational::sqrt_enclosure(&r, WITNESS_BITS);
        let expected_sign = if j % 2 == 0 { 1 } else { -1 };
        let value_sign = sign_at_neg_sqrt(p, &r);
        out.push(AnyaPoint {
            index: j,
            interval_lo: -(&a[j] / &a[j + 1]),
            interval_hi: -(&a[j - 1] / &a[j]),
            witness_lo: -shi,
            witness_hi: -slo,
            expected_sign,
            value_sign,
            verified: expected_sign * value_sign >= 0,
        });
    }
    Ok(out)
}

/// Lower bound on the real root count from the sign pattern
/// `1, (-1)^{j_1}, ..., (-1)^{j_s}, (-1)^n` over the indices with `q_j >= 4`.
pub fn cor_anya_lower_bound(p: &Poly) -> BoundCertificate {
    let (c, d) = (Criterion::CorAnya, Direction::LowerBound);
    let n = p.degree();
    if let Err(Error::NotApplicable(why)) = hypothesis(p) {
        return BoundCertificate::not_applicable(c, d, n, why);
    }
    let four = int(4);
    let parity = |k: usize| if k.is_multiple_of(2) { 1i8 } else { -1 };
    let mut signs = vec![1i8];
    let mut witnesses = Vec::new();
    for j in 1..n {
        let q = q_at(p, j).unwrap();
        if q >= four {
            signs.push(parity(j));
            witnesses.push(Witness::q(j, q, Relation::Ge, four.clone()));
        }
    }
    signs.push(parity(n));
    BoundCertificate::fired(c, d, n, sign_changes_by(signs), witnesses)
}
