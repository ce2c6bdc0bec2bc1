use super::{all_strictly_below, strictly_below, BoundCertificate, Criterion, Direction, Relation, Witness};
use crate::poly::Poly;
use crate::qseq::{q_at, PositivityClass};
use crate::rational::{self, Rational};
use crate::trig::certified_inv_cos_sq;

fn require_positive(p: &Poly, criterion: Criterion, direction: Direction) -> Option<BoundCertificate> {
    if !p.all_positive() {
        return Some(BoundCertificate::not_applicable(
            criterion,
            direction,
            p.degree(),
            "requires all coefficients strictly positive",
        ));
    }
    if p.degree() < 2 {
        return Some(BoundCertificate::not_applicable(criterion, direction, p.degree(), "requires degree >= 2"));
    }
    None
}

/// `q_k >= 4` for every `k`: all segments `a_i x^i + ... + a_j x^j` are
/// real-rooted.
pub fn hutchinson_test(p: &Poly) -> BoundCertificate {
    let (c, d) = (Criterion::HutchinsonH, Direction::RealRootedness);
    if let Some(na) = require_positive(p, c, d) {
        return na;
    }
    let n = p.degree();
    let four = rational::int(4);
    let (pass, fail): (Vec<_>, Vec<_>) = (1..n)
        .map(|k| {
            let q = q_at(p, k).expect("positive coefficients");
            if q >= four {
                (true, Witness::q(k, q, Relation::Ge, four.clone()))
            } else {
                (false, Witness::q(k, q, Relation::Lt, four.clone()))
            }
        })
        .partition(|(ok, _)| *ok);
    let strip = |v: Vec<(bool, Witness)>| v.into_iter().map(|(_, w)| w).collect::<Vec<_>>();
    if fail.is_empty() {
        BoundCertificate::fired(c, d, n, n, strip(pass))
    } else {
        BoundCertificate::silent(c, d, n, strip(fail))
    }
}

/// Newton's threshold `((k+1)/k) ((n-k+1)/(n-k))`.
pub fn newton_threshold(n: usize, k: usize) -> Rational {
    let (n, k) = (n as i64, k as i64);
    rational::frac(k + 1, k) * rational::frac(n - k + 1, n - k)
}

/// Fires (NecessaryFailed) when some Newton inequality fails, which rules
/// out real-rootedness.
pub fn newton_necessary(p: &Poly) -> BoundCertificate {
    let (c, d) = (Criterion::NewtonN, Direction::NecessaryFailed);
    if let Some(na) = require_positive(p, c, d) {
        return na;
    }
    let n = p.degree();
    let mut holds = Vec::new();
    let mut fails = Vec::new();
    for k in 1..n {
        let q = q_at(p, k).expect("positive coefficients");
        let t = newton_threshold(n, k);
        if q >= t {
            holds.push(Witness::q(k, q, Relation::Ge, t));
        } else {
            fails.push(Witness::q(k, q, Relation::Lt, t));
        }
    }
    if fails.is_empty() {
        BoundCertificate::silent(c, d, n, holds)
    } else {
        BoundCertificate::fired(c, d, n, n - 2, fails)
    }
}

/// Which coefficients the parity hypothesis requires to be positive.
#[derive(Clone, Copy)]
enum Hypothesis {
    All,
    Even,
    Odd,
}

impl Hypothesis {
    fn check(self, p: &Poly) -> Result<(), &'static str> {
        let class = PositivityClass::of(p);
        let ok = match self {
            Hypothesis::All => class == PositivityClass::AllPositive,
            Hypothesis::Even => class.even_positive(),
            Hypothesis::Odd => class.odd_positive(),
        };
        if ok {
            Ok(())
        } else {
            Err(match self {
                Hypothesis::All => "requires all coefficients strictly positive",
                Hypothesis::Even => "requires all even-index coefficients strictly positive",
                Hypothesis::Odd => "requires all odd-index coefficients strictly positive",
            })
        }
    }
}

/// `q_{2k+1} < 1/cos^2(pi/(m+2))` for the odd indices `1..2m-1` of a degree
/// `2m` polynomial certifies `P > 0` on the real line.
fn positivity_test(p: &Poly, precision_bits: u32, criterion: Criterion, hyp: Hypothesis) -> BoundCertificate {
    let d = Direction::Positivity;
    let n = p.degree();
    if p.is_zero() || n % 2 == 1 || n < 2 {
        return BoundCertificate::not_applicable(criterion, d, n, "requires even degree 2m with m >= 1");
    }
    if let Err(why) = hyp.check(p) {
        return BoundCertificate::not_applicable(criterion, d, n, why);
    }
    let m = n / 2;
    let threshold = certified_inv_cos_sq(m as u64, precision_bits);
    // k = m would need q_{2m+1}, which does not exist for degree 2m
    let checks = (0..m)
        .map(|k| {
            let idx = 2 * k + 1;
            let q = q_at(p, idx).expect("even neighbours are positive");
            strictly_below(idx, &q, &threshold.lower, &threshold.upper)
        })
        .collect();
    all_strictly_below(criterion, d, n, 0, checks)
}

/// Strict `q_index < ((4k^2-1)/4k^2) / cos^2(pi/(m+2))` for `k = 1..m` on a
/// degree `2m+1` polynomial certifies exactly one real root. `index_of`
/// maps `k` to the tested index.
fn one_root_test(
    p: &Poly,
    precision_bits: u32,
    criterion: Criterion,
    hyp: Hypothesis,
    index_of: impl Fn(usize, usize) -> usize,
) -> BoundCertificate {
    let d = Direction::ExactCount;
    let n = p.degree();
    if p.is_zero() || n.is_multiple_of(2) || n < 3 {
        return BoundCertificate::not_applicable(criterion, d, n, "requires odd degree 2m+1 with m >= 1");
    }
    if let Err(why) = hyp.check(p) {
        return BoundCertificate::not_applicable(criterion, d, n, why);
    }
    let m = (n - 1) / 2;
    let base = certified_inv_cos_sq(m as u64, precision_bits);
    let checks = (1..=m)
        .map(|k| {
            let kk = (4 * k * k) as i64;
            let factor = rational::frac(kk - 1, kk);
            let idx = index_of(m, k);
            let q = q_at(p, idx).expect("neighbours are positive");
            strictly_below(idx, &q, &(&base.lower * &factor), &(&base.upper * &factor))
        })
        .collect();
    all_strictly_below(criterion, d, n, 1, checks)
}

pub fn theorem_a_test(p: &Poly, precision_bits: u32) -> BoundCertificate {
    positivity_test(p, precision_bits, Criterion::ThmA, Hypothesis::All)
}

/// Theorem A with only the even-index coefficients required positive.
pub fn theorem_d_test(p: &Poly, precision_bits: u32) -> BoundCertificate {
    positivity_test(p, precision_bits, Criterion::ThmD, Hypothesis::Even)
}

pub fn theorem_b_test(p: &Poly, precision_bits: u32) -> BoundCertificate {
    one_root_test(p, precision_bits, Criterion::ThmB, Hypothesis::All, |_, k| 2 * k)
}

/// Theorem B with only the odd-index coefficients required positive.
pub fn theorem_e_test(p: &Poly, precision_bits: u32) -> BoundCertificate {
    one_root_test(p, precision_bits, Criterion::ThmE, Hypothesis::Odd, |_, k| 2 * k)
}

/// The reversed form of Theorem E: tests `q_{2m+1-2k}`. Requires the
/// even-index coefficients positive, which is what Theorem E needs of the
/// reversed polynomial.
pub fn theorem_f_test(p: &Poly, precision_bits: u32) -> BoundCertificate {
    one_root_test(p, precision_bits, Criterion::ThmF, Hypothesis::Even, |m, k| 2 * m + 1 - 2 * k)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::count_real_roots;
    use crate::qseq::coeffs_from_q;
    use crate::rational::{frac, int};

    const BITS: u32 = 128;

    fn roots(p: &Poly) -> usize {
        count_real_roots(p).unwrap().total_with_multiplicity
    }

    #[test]
    fn hutchinson_examples() {
        let p = Poly::new(vec![int(1), int(1), frac(1, 4)]);
        let c = hutchinson_test(&p);
        assert!(c.fired && c.witnesses_hold());
        assert_eq!(roots(&p), 2);

        let p = coeffs_from_q(&int(1), &int(1), &[int(4), int(4), int(4)]).unwrap();
        assert!(hutchinson_test(&p).fired);
        for i in 0..=p.degree() {
            for j in i..=p.degree() {
                let s = p.segment(i, j).unwrap();
                if !s.is_zero() {
                    assert_eq!(roots(&s), s.degree(), "segment {i}..{j}");
                }
            }
        }

        let c = hutchinson_test(&Poly::from_ints(&[1, 1, 1]));
        assert!(c.applicable && !c.fired);
        assert_eq!(c.witnesses[0].to_string(), "q_1 = 1 < 4");

        let c = hutchinson_test(&Poly::from_ints(&[1, -1, 1]));
        assert!(!c.applicable && c.bound.is_none());
    }

    #[test]
    fn newton_examples() {
        let cube = Poly::from_ints(&[1, 3, 3, 1]);
        let c = newton_necessary(&cube);
        assert!(c.applicable && !c.fired);
        assert_eq!(c.witnesses[0].lhs, int(3));
        assert_eq!(c.witnesses[0].rhs, int(3));

        let p = Poly::from_ints(&[1, 1, 1, 1]);
        let c = newton_necessary(&p);
        assert!(c.fired);
        assert_eq!(c.bound, Some(1));
        assert_eq!(roots(&p), 1);

        assert!(!newton_necessary(&Poly::from_ints(&[1, 2, 1])).fired);
    }

    #[test]
    fn theorem_a_examples() {
        let p = Poly::from_ints(&[1, 1, 1, 1, 1]);
        let c = theorem_a_test(&p, BITS);
        assert!(c.fired && c.witnesses_hold());
        assert_eq!(c.root_range(), Some((0, 0)));
        assert_eq!(roots(&p), 0);

        let c = theorem_a_test(&Poly::from_ints(&[1, 3, 1]), BITS);
        assert!(c.applicable && !c.fired);
        assert_eq!(roots(&Poly::from_ints(&[1, 3, 1])), 2);

        let p = Poly::from_ints(&[1, 2, 3, 2, 1]);
        let c = theorem_a_test(&p, BITS);
        assert!(c.fired);
        assert_eq!(c.witnesses[0].lhs, frac(4, 3));
        assert_eq!(roots(&p), 0);

        assert!(!theorem_a_test(&Poly::from_ints(&[1, 1, 1, 1]), BITS).applicable);
    }

    #[test]
    fn theorem_b_examples() {
        let p = Poly::from_ints(&[1, 1, 1, 1]);
        let c = theorem_b_test(&p, BITS);
        assert!(c.fired);
        assert_eq!(c.witnesses[0].rhs, int(3));
        assert_eq!(roots(&p), 1);

        let p = Poly::from_ints(&[1, 3, 3, 1]);
        assert!(!theorem_b_test(&p, BITS).fired);

        let p = Poly::from_ints(&[1, 1, 1, 1, 1, 1]);
        let c = theorem_b_test(&p, BITS);
        assert!(c.fired);
        assert_eq!(c.witnesses[0].rhs, frac(3, 2));
        assert_eq!(c.witnesses[1].rhs, frac(15, 8));
        assert_eq!(roots(&p), 1);

        assert!(!theorem_b_test(&Poly::from_ints(&[1, 1, 1]), BITS).applicable);
    }

    #[test]
    fn sign_mixed_variants() {
        let p = Poly::from_ints(&[1, -1, 1, -1, 1]);
        assert!(!theorem_a_test(&p, BITS).applicable);
        let c = theorem_d_test(&p, BITS);
        assert!(c.fired);
        assert_eq!(roots(&p), 0);

        let p = Poly::from_ints(&[1, 1, 1, 1]);
        assert_eq!(theorem_e_test(&p, BITS).fired, theorem_b_test(&p, BITS).fired);

        // E fires on p but not on its reversal; F is the mirror image.
        let p = Poly::from_ints(&[1, 10, 1, 1]);
        let r = p.reverse().unwrap();
        assert!(theorem_e_test(&p, BITS).fired);
        assert!(!theorem_f_test(&p, BITS).fired);
        assert!(theorem_f_test(&r, BITS).fired);
        assert!(!theorem_e_test(&r, BITS).fired);
        assert_eq!(roots(&r), 1);

        // x^2 + 1: a_1 = 0 so A is out, D fires on q_1 = 0
        let p = Poly::from_ints(&[1, 0, 1]);
        assert!(!theorem_a_test(&p, BITS).applicable);
        assert!(theorem_d_test(&p, BITS).fired);
    }

    #[test]
    fn enclosure_gap_is_undecided() {
        // q_1 = q_3 = 2 + tiny with m = 3: threshold 1/cos^2(pi/5) ~ 1.5279
        let t = certified_inv_cos_sq(3, 16);
        let q = (&t.lower + &t.upper) / int(2);
        if t.lower < q && q < t.upper {
            let p = coeffs_from_q(&int(1), &int(1), &[q.clone(), int(1), q.clone(), int(1), q]).unwrap();
            let low = theorem_a_test(&p, 16);
            assert!(low.indeterminate && !low.fired);
            let high = theorem_a_test(&p, 256);
            assert!(!high.indeterminate);
        }
    }
}
