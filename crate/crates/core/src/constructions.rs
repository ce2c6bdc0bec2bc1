//! Explicit polynomial families: the sharp examples for the sum criteria,
//! the root-preserving antiderivative, and the counterexample tower.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::qseq::coeffs_from_q;
use crate::rational::{frac, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    SharpThm2,
    SharpPr1,
    CounterexampleQ,
    /// All `q_k = 4` with `a_0 = a_1 = 1`: the boundary of the Hutchinson
    /// condition.
    HutchinsonExtremal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
}

impl FamilySpec {
    pub fn new(family: Family, n: usize) -> Self {
        FamilySpec { family, n, m: None, j: None }
    }

    pub fn pr1(n: usize, m: usize, j: usize) -> Self {
        FamilySpec { family: Family::SharpPr1, n, m: Some(m), j: Some(j) }
    }

    pub fn generate(&self) -> Result<Poly> {
        match self.family {
            Family::SharpThm2 => sharp_thm2(self.n),
            Family::SharpPr1 => {
                let (m, j) = match (self.m, self.j) {
                    (Some(m), Some(j)) => (m, j),
                    _ => return Err(Error::BadParams("sharp-pr1 needs m and j".into())),
                };
                sharp_pr1(self.n, m, j)
            }
            Family::CounterexampleQ => counterexample_q(self.n),
            Family::HutchinsonExtremal => hutchinson_extremal(self.n),
        }
    }
}

/// `(x+1)^{n-2} (x^2 + (n-4)/(n-2) x + 1)`.
pub fn sharp_thm2(n: usize) -> Result<Poly> {
    if n < 4 {
        return Err(Error::BadParams(format!("sharp_thm2 needs n >= 4, got {n}")));
    }
    let ni = n as i64;
    let quad = Poly::new(vec![int(1), frac(ni - 4, ni - 2), int(1)]);
    Ok(&x_plus_one().pow(n - 2) * &quad)
}

/// Degree `n` polynomial with every `q_k = 4`.
pub fn hutchinson_extremal(n: usize) -> Result<Poly> {
    if n < 2 {
        return Err(Error::BadParams(format!("hutchinson_extremal needs n >= 2, got {n}")));
    }
    coeffs_from_q(&int(1), &int(1), &vec![int(4); n - 1])
}

fn x_plus_one() -> Poly {
    Poly::from_ints(&[1, 1])
}

/// The presentation `(x+1)^power * quadratic`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftedQuadratic {
    pub power: usize,
    pub quadratic: Poly,
}

impl ShiftedQuadratic {
    /// Splits off every factor `x + 1`; `None` unless the cofactor is a
    /// quadratic with negative discriminant.
    pub fn split(p: &Poly) -> Option<Self> {
        let lin = x_plus_one();
        let mut rest = p.clone();
        let mut power = 0;
        while rest.degree() > 0 {
            let (q, r) = rest.div_rem(&lin).ok()?;
            if !r.is_zero() {
                break;
            }
            rest = q;
            power += 1;
        }
        if rest.degree() != 2 {
            return None;
        }
        let (c, b, a) = (rest.coeff(0), rest.coeff(1), rest.coeff(2));
        if &b * &b - int(4) * &a * &c >= int(0) {
            return None;
        }
        Some(ShiftedQuadratic { power, quadratic: rest })
    }

    pub fn expand(&self) -> Poly {
        &x_plus_one().pow(self.power) * &self.quadratic
    }
}

/// The antiderivative of `f` vanishing at `-1`, for `f` of the form
/// `(x+1)^m (a x^2 + b x + c)` with positive coefficients and an
/// irreducible quadratic. The result has the same form with `m + 1`.
pub fn integrate_preserving(f: &Poly) -> Result<Poly> {
    if !f.all_positive() {
        return Err(Error::BadInput("integrand must have all coefficients positive".into()));
    }
    if ShiftedQuadratic::split(f).is_none() {
        return Err(Error::BadInput("integrand is not (x+1)^m times an irreducible quadratic".into()));
    }
    let p = f.antiderivative_vanishing_at(&int(-1));
    debug_assert!(p.coeff(0).is_positive());
    debug_assert!(ShiftedQuadratic::split(&p).is_some());
    Ok(p)
}

/// The sharp family for the pairwise criterion at `(m, j)`: start from
/// `(x+1)^m (x^2 + (m-2)/m x + 1)`, integrate `n-m-j-1` times, reverse,
/// integrate `j-1` more times.
pub fn sharp_pr1(n: usize, m: usize, j: usize) -> Result<Poly> {
    let ok = n >= 4 && m >= 2 && m + 2 <= n && j >= 1 && m + j < n;
    if !ok {
        return Err(Error::BadParams(format!(
            "sharp_pr1 needs n >= 4, 2 <= m <= n-2, 1 <= j <= n-m-1 (n = {n}, m = {m}, j = {j})"
        )));
    }
    let mi = m as i64;
    let mut p = &x_plus_one().pow(m) * &Poly::new(vec![int(1), frac(mi - 2, mi), int(1)]);
    for _ in 0..(n - m - j - 1) {
        p = integrate_preserving(&p)?;
    }
    p = p.reverse()?;
    for _ in 0..(j - 1) {
        p = integrate_preserving(&p)?;
    }
    Ok(p)
}

/// Ascending coefficients of the degree 15 base of the tower.
const Q15_COEFFS: [(i64, i64); 16] = [
    (83, 720720),
    (1, 728),
    (17, 2288),
    (19, 792),
    (9, 176),
    (3, 40),
    (11, 144),
    (3, 56),
    (3, 112),
    (1, 72),
    (1, 80),
    (1, 88),
    (1, 144),
    (3, 1144),
    (9, 16016),
    (19, 360360),
];

/// `(x+1)^13 (19/360360 x^2 - 89/720720 x + 83/720720)`.
pub fn q15_factored() -> Poly {
    let quad = Poly::new(vec![frac(83, 720720), frac(-89, 720720), frac(19, 360360)]);
    &x_plus_one().pow(13) * &quad
}

pub fn q15() -> Poly {
    Poly::new(Q15_COEFFS.iter().map(|&(a, b)| frac(a, b)).collect())
}

/// `Q_15`, then `Q_n(x) = integral of Q_{n-1} from -1 to x`.
pub fn counterexample_q(n: usize) -> Result<Poly> {
    Ok(counterexample_tower(n)?.pop().expect("non-empty tower"))
}

/// `[Q_15, ..., Q_{n_max}]`.
pub fn counterexample_tower(n_max: usize) -> Result<Vec<Poly>> {
    if n_max < 15 {
        return Err(Error::BadParams(format!("the counterexample tower starts at n = 15, got {n_max}")));
    }
    let minus_one = int(-1);
    let mut out = vec![q15()];
    for _ in 16..=n_max {
        let next = out.last().unwrap().antiderivative_vanishing_at(&minus_one);
        out.push(next);
    }
    Ok(out)
}

/// The top `count <= 16` coefficients of `Q_n` as `(index, value)`, without
/// building the whole polynomial. Integration constants only reach indices
/// below `n - 15`, so coefficient `i` of `Q_15` lands at `i + n - 15` divided
/// by `(i+1)(i+2)...(i + n - 15)`.
pub fn counterexample_q_top(n: usize, count: usize) -> Result<Vec<(usize, Rational)>> {
    if n < 15 {
        return Err(Error::BadParams(format!("the counterexample tower starts at n = 15, got {n}")));
    }
    if count == 0 || count > 16 {
        return Err(Error::BadParams("count must be in 1..=16".into()));
    }
    let d = n - 15;
    let base = q15();
    Ok((16 - count..16)
        .map(|i| {
            let mut rising = BigInt::one();
            for s in 1..=d {
                rising *= BigInt::from(i + s);
            }
            (i + d, base.coeff(i) / Rational::from_integer(rising))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::oracle::{count_real_roots, count_real_roots_deflating};
    use crate::qseq::q_at;

    fn roots(p: &Poly) -> usize {
        count_real_roots(p).unwrap().total_with_multiplicity
    }

    #[test]
    fn sharp_thm2_examples() {
        assert_eq!(sharp_thm2(4).unwrap(), Poly::from_ints(&[1, 2, 2, 2, 1]));
        let p = sharp_thm2(5).unwrap();
        assert_eq!(q_at(&p, 1), Some(frac(20, 9)));
        assert_eq!(q_at(&p, 4), Some(frac(20, 9)));
        assert_eq!(roots(&p), 3);
        assert_eq!(roots(&sharp_thm2(6).unwrap()), 4);
        assert!(matches!(sharp_thm2(3), Err(Error::BadParams(_))));
    }

    #[test]
    fn integrate_preserving_examples() {
        let f = Poly::from_ints(&[1, 1, 1]);
        let p = integrate_preserving(&f).unwrap();
        assert!(p.eval(&int(-1)).is_zero());
        assert_eq!(ShiftedQuadratic::split(&p).unwrap().power, 1);

        let f = &x_plus_one() * &Poly::from_ints(&[1, 1, 1]);
        let p = integrate_preserving(&f).unwrap();
        assert_eq!(p.degree(), 4);
        assert!(p.eval(&int(-1)).is_zero());
        assert_eq!(roots(&p), 2);

        let q14 = &x_plus_one().pow(12) * &Poly::from_ints(&[3, 1, 2]);
        let p = integrate_preserving(&q14).unwrap();
        assert_eq!(p, q14.antiderivative_vanishing_at(&int(-1)));
        assert_eq!(roots(&p), 13);

        assert!(matches!(integrate_preserving(&Poly::from_ints(&[1, 3, 1])), Err(Error::BadInput(_))));
        assert!(matches!(integrate_preserving(&Poly::from_ints(&[1, -1, 1])), Err(Error::BadInput(_))));
    }

    #[test]
    fn sharp_pr1_degenerate_case_is_the_seed() {
        for m in 2..8 {
            let p = sharp_pr1(m + 2, m, 1).unwrap();
            let mi = m as i64;
            let expect = frac(2 * (mi + 2) * (mi - 1), mi * mi);
            assert_eq!(q_at(&p, 1), Some(expect.clone()));
            assert_eq!(q_at(&p, m + 1), Some(expect));
        }
    }

    #[test]
    fn sharp_pr1_roots() {
        for n in 4..=9 {
            for m in 2..=n - 2 {
                for j in 1..n - m {
                    let p = sharp_pr1(n, m, j).unwrap();
                    assert_eq!(p.degree(), n);
                    assert!(p.all_positive());
                    assert_eq!(roots(&p), n - 2, "({n}, {m}, {j})");
                }
            }
        }
        assert!(sharp_pr1(6, 4, 1).is_ok());
        assert!(matches!(sharp_pr1(6, 4, 2), Err(Error::BadParams(_))));
    }

    #[test]
    fn q15_forms_agree() {
        assert_eq!(q15(), q15_factored());
        let p = q15();
        assert_eq!(q_at(&p, 8), Some(frac(27, 28)));
        assert_eq!(q_at(&p, 9), Some(frac(140, 243)));
        assert_eq!(q_at(&p, 10), Some(frac(99, 100)));
        assert_eq!(roots(&p), 13);
    }

    #[test]
    fn tower_small() {
        let tower = counterexample_tower(20).unwrap();
        for (p, n) in tower.iter().zip(15..) {
            assert_eq!(p.degree(), n);
            assert!(p.all_positive());
            assert_eq!(count_real_roots_deflating(p, &int(-1)).unwrap().total_with_multiplicity, n - 2);
            let top = counterexample_q_top(n, 16).unwrap();
            for (i, c) in top {
                assert_eq!(p.coeff(i), c);
            }
        }
        assert!(matches!(counterexample_q(14), Err(Error::BadParams(_))));
    }

    #[test]
    fn tower_ratio_law_and_limits() {
        let ratio = |top: &[(usize, Rational)], k: usize| {
            let at = |i: usize| top.iter().find(|(j, _)| *j == i).unwrap().1.clone();
            &at(k) * &at(k) / (at(k - 1) * at(k + 1))
        };
        let laws = [(5, frac(9, 10)), (6, frac(14, 27)), (7, frac(6, 7))];
        for n in [15usize, 16, 40, 10_000] {
            let top = counterexample_q_top(n, 10).unwrap();
            for (off, limit) in &laws {
                let k = n - off;
                let q = ratio(&top, k);
                let ki = k as i64;
                assert_eq!(q, limit * frac(ki + 1, ki), "n = {n}, k = {k}");
                assert!(q < int(1));
                if n == 10_000 {
                    assert!(&q - limit < frac(1, n as i64));
                }
            }
        }
    }

    #[test]
    fn hutchinson_extremal_family() {
        let p = hutchinson_extremal(6).unwrap();
        assert_eq!(roots(&p), 6);
        assert!((1..6).all(|k| q_at(&p, k) == Some(int(4))));
    }
}
