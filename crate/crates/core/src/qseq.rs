//! The ratio sequence `q_k = a_k^2 / (a_{k-1} a_{k+1})` and the inverse
//! reconstruction of coefficients from it.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{self, Rational};

/// `q_1..q_{n-1}`; index `k` is present iff both neighbours `a_{k-1}`,
/// `a_{k+1}` are nonzero. Values are signed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeq {
    degree: usize,
    entries: BTreeMap<usize, Rational>,
}

impl QSeq {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, k: usize) -> Option<&Rational> {
        self.entries.get(&k)
    }

    pub fn entries(&self) -> &BTreeMap<usize, Rational> {
        &self.entries
    }

    /// True when every index `1..n-1` is defined.
    pub fn is_total(&self) -> bool {
        self.entries.len() + 1 == self.degree
    }

    /// Dense `q_1..q_{n-1}` when total.
    pub fn to_vec(&self) -> Option<Vec<Rational>> {
        self.is_total().then(|| self.entries.values().cloned().collect())
    }
}

impl Serialize for QSeq {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<String, String> = self
            .entries
            .iter()
            .map(|(k, v)| (k.to_string(), rational::to_string(v)))
            .collect();
        m.serialize(s)
    }
}

pub fn q_sequence(p: &Poly) -> Result<QSeq> {
    let n = p.degree();
    if p.is_zero() || n < 2 {
        return Err(Error::DegreeTooSmall { degree: n, required: 2 });
    }
    let a = p.coeffs();
    let entries = (1..n)
        .filter(|&k| !a[k - 1].is_zero() && !a[k + 1].is_zero())
        .map(|k| (k, &a[k] * &a[k] / (&a[k - 1] * &a[k + 1])))
        .collect();
    Ok(QSeq { degree: n, entries })
}

/// `q_k` for a single index, `None` when undefined or out of range.
pub fn q_at(p: &Poly, k: usize) -> Option<Rational> {
    let n = p.degree();
    if k == 0 || k >= n {
        return None;
    }
    let (l, c, r) = (p.coeff(k - 1), p.coeff(k), p.coeff(k + 1));
    if l.is_zero() || r.is_zero() {
        return None;
    }
    Some(&c * &c / (l * r))
}

/// Which parity classes of coefficients are strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PositivityClass {
    AllPositive,
    EvenPositive,
    OddPositive,
    Other,
}

impl PositivityClass {
    pub fn of(p: &Poly) -> Self {
        if p.is_zero() {
            return PositivityClass::Other;
        }
        let a = p.coeffs();
        let even = a.iter().step_by(2).all(Signed::is_positive);
        let odd = a.iter().skip(1).step_by(2).all(Signed::is_positive);
        match (even, odd) {
            (true, true) => PositivityClass::AllPositive,
            (true, false) => PositivityClass::EvenPositive,
            (false, true) => PositivityClass::OddPositive,
            _ => PositivityClass::Other,
        }
    }

    pub fn even_positive(self) -> bool {
        matches!(self, PositivityClass::AllPositive | PositivityClass::EvenPositive)
    }

    pub fn odd_positive(self) -> bool {
        matches!(self, PositivityClass::AllPositive | PositivityClass::OddPositive)
    }
}

/// The unique positive-coefficient polynomial of degree `q.len() + 1` with
/// the given `a_0`, `a_1` and ratio sequence.
pub fn coeffs_from_q(a0: &Rational, a1: &Rational, q: &[Rational]) -> Result<Poly> {
    if !a0.is_positive() || !a1.is_positive() {
        return Err(Error::InvalidQSequence("a0 and a1 must be positive".into()));
    }
    if let Some(k) = q.iter().position(|v| !v.is_positive()) {
        return Err(Error::InvalidQSequence(format!("q_{} is not positive", k + 1)));
    }
    let mut a = Vec::with_capacity(q.len() + 2);
    a.push(a0.clone());
    a.push(a1.clone());
    for (k, qk) in q.iter().enumerate() {
        // a_{k+2} = a_{k+1}^2 / (q_{k+1} a_k)
        let next = &a[k + 1] * &a[k + 1] / (qk * &a[k]);
        a.push(next);
    }
    Ok(Poly::new(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn square_has_q_four() {
        let q = q_sequence(&Poly::from_ints(&[1, 2, 1])).unwrap();
        assert_eq!(q.get(1), Some(&int(4)));
        assert!(q.is_total());
    }

    #[test]
    fn zero_neighbour_leaves_gap() {
        // x^3 + x^2 + 0x + 1: q_1 = 0, q_2 undefined
        let q = q_sequence(&Poly::from_ints(&[1, 0, 1, 1])).unwrap();
        assert_eq!(q.get(1), Some(&int(0)));
        assert_eq!(q.get(2), None);
        assert!(!q.is_total());
    }

    #[test]
    fn signed_values_are_kept() {
        let q = q_sequence(&Poly::from_ints(&[-1, 1, 1])).unwrap();
        assert_eq!(q.get(1), Some(&int(-1)));
    }

    #[test]
    fn degree_too_small() {
        assert!(matches!(
            q_sequence(&Poly::from_ints(&[1, 1])),
            Err(Error::DegreeTooSmall { degree: 1, .. })
        ));
        assert!(q_sequence(&Poly::zero()).is_err());
    }

    #[test]
    fn reconstruction_examples() {
        let p = coeffs_from_q(&int(1), &int(1), &[int(4)]).unwrap();
        assert_eq!(p.coeffs(), &[int(1), int(1), frac(1, 4)]);
        let p = coeffs_from_q(&int(1), &int(1), &[int(4), int(4)]).unwrap();
        assert_eq!(p.coeff(2), frac(1, 4));
        assert_eq!(p.coeff(3), frac(1, 64));
        let p = coeffs_from_q(&int(1), &int(1), &[int(1), int(1), int(1)]).unwrap();
        assert_eq!(p, Poly::from_ints(&[1, 1, 1, 1, 1]));
        assert!(coeffs_from_q(&int(1), &int(1), &[int(0)]).is_err());
        assert!(coeffs_from_q(&int(-1), &int(1), &[int(1)]).is_err());
    }

    #[test]
    fn positivity_classes() {
        assert_eq!(PositivityClass::of(&Poly::from_ints(&[1, 2, 3])), PositivityClass::AllPositive);
        assert_eq!(PositivityClass::of(&Poly::from_ints(&[1, -1, 1, -1, 1])), PositivityClass::EvenPositive);
        assert_eq!(PositivityClass::of(&Poly::from_ints(&[-1, 1, 0, 1])), PositivityClass::OddPositive);
        assert_eq!(PositivityClass::of(&Poly::from_ints(&[-1, -1])), PositivityClass::Other);
    }
}
