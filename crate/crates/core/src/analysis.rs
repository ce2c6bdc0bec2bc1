//! Runs every criterion on one polynomial next to the oracle.

use serde::Serialize;

use crate::conjectures::{conj1_bound, conj2_bound, conj3_bound, ConjectureReport};
use crate::criteria::{
    cor_anya_lower_bound, corollary1_test, corollary2_any, hutchinson_test, newton_necessary,
    prop_anya_points, theorem1_sum_test, theorem_a_test, theorem_b_test, theorem_d_test,
    theorem_e_test, theorem_f_test, AnyaPoint, BoundCertificate, Criterion,
};
use crate::error::{Error, Result};
use crate::oracle::{count_real_roots, RootReport};
use crate::poly::Poly;
use crate::qseq::{q_sequence, QSeq};
use crate::rational;

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    #[serde(with = "rational::serde_str_vec")]
    pub coefficients: Vec<rational::Rational>,
    pub degree: usize,
    pub q_sequence: Option<QSeq>,
    pub oracle: RootReport,
    pub certificates: Vec<BoundCertificate>,
    pub anya_points: Vec<AnyaPoint>,
    pub conjectures: Vec<ConjectureReport>,
    /// Intersection of the root ranges of all fired certificates.
    pub combined: (usize, usize),
    /// Fired certificates whose range excludes the oracle count.
    pub contradictions: Vec<Criterion>,
    pub agreement: bool,
}

/// Every ratio criterion, in a fixed order.
pub fn all_certificates(p: &Poly, precision_bits: u32) -> Vec<BoundCertificate> {
    vec![
        hutchinson_test(p),
        newton_necessary(p),
        theorem_a_test(p, precision_bits),
        theorem_b_test(p, precision_bits),
        theorem_d_test(p, precision_bits),
        theorem_e_test(p, precision_bits),
        theorem_f_test(p, precision_bits),
        theorem1_sum_test(p),
        corollary1_test(p),
        corollary2_any(p),
        cor_anya_lower_bound(p),
    ]
}

pub fn analyze(p: &Poly, precision_bits: u32) -> Result<AnalysisReport> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let oracle = count_real_roots(p)?;
    let actual = oracle.total_with_multiplicity;
    let certificates = all_certificates(p, precision_bits);
    let mut combined = (0, p.degree());
    let mut contradictions = Vec::new();
    for c in &certificates {
        if let Some((lo, hi)) = c.root_range() {
            combined = (combined.0.max(lo), combined.1.min(hi));
            if !c.consistent_with(actual) {
                contradictions.push(c.criterion);
            }
        }
    }
    let conjectures = if p.all_positive() {
        vec![conj1_bound(p)?, conj2_bound(p)?, conj3_bound(p)?]
    } else {
        Vec::new()
    };
    Ok(AnalysisReport {
        coefficients: p.coeffs().to_vec(),
        degree: p.degree(),
        q_sequence: q_sequence(p).ok(),
        anya_points: prop_anya_points(p).unwrap_or_default(),
        agreement: contradictions.is_empty() && combined.0 <= actual && actual <= combined.1,
        oracle,
        certificates,
        conjectures,
        combined,
        contradictions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{q15, sharp_thm2};
    use crate::criteria::Direction;
    use crate::trig::DEFAULT_PRECISION_BITS;

    #[test]
    fn q15_report() {
        let r = analyze(&q15(), DEFAULT_PRECISION_BITS).unwrap();
        assert_eq!(r.oracle.total_with_multiplicity, 13);
        assert!(r.agreement);
        let c3 = r.conjectures.iter().find(|c| c.conjecture == crate::conjectures::ConjectureId::LogConcaveC3).unwrap();
        assert!(c3.violated && c3.predicted_bound <= 11);
    }

    #[test]
    fn x2_plus_one() {
        let r = analyze(&Poly::from_ints(&[1, 0, 1]), DEFAULT_PRECISION_BITS).unwrap();
        assert_eq!(r.oracle.total_with_multiplicity, 0);
        let d = r.certificates.iter().find(|c| c.criterion == Criterion::ThmD).unwrap();
        assert!(d.fired);
        assert_eq!(r.combined, (0, 0));
        assert!(r.agreement);
    }

    #[test]
    fn sharp_thm2_no_upper_bound() {
        let r = analyze(&sharp_thm2(10).unwrap(), DEFAULT_PRECISION_BITS).unwrap();
        assert_eq!(r.oracle.total_with_multiplicity, 8);
        assert!(r
            .certificates
            .iter()
            .filter(|c| matches!(c.direction, Direction::UpperBound))
            .all(|c| !c.fired));
        assert!(r.agreement);
    }
}
