use rayon::prelude::*;
use serde::Serialize;

use super::{BoundCertificate, Criterion, Direction, Relation, Witness};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::qseq::q_at;
use crate::rational::{self, frac, int, Rational};

fn positive_degree_four(p: &Poly, criterion: Criterion) -> Option<BoundCertificate> {
    let d = Direction::UpperBound;
    if p.is_zero() || p.degree() < 4 {
        return Some(BoundCertificate::not_applicable(criterion, d, p.degree(), "requires degree >= 4"));
    }
    if !p.all_positive() {
        return Some(BoundCertificate::not_applicable(
            criterion,
            d,
            p.degree(),
            "requires all coefficients strictly positive",
        ));
    }
    None
}

/// `4(n^2 - 3n)/(n-2)^2`, the least value of `q_1 + q_{n-1}` compatible with
/// at least `n - 2` real roots.
pub fn theorem1_bound(n: usize) -> Rational {
    let n = n as i64;
    frac(4 * (n * n - 3 * n), (n - 2) * (n - 2))
}

/// `q_1 + q_{n-1} < theorem1_bound(n)` certifies at most `n - 4` real roots
/// (fewer than `n - 2`, then parity).
pub fn theorem1_sum_test(p: &Poly) -> BoundCertificate {
    let c = Criterion::Thm1;
    if let Some(na) = positive_degree_four(p, c) {
        return na;
    }
    let n = p.degree();
    let sum = q_at(p, 1).unwrap() + q_at(p, n - 1).unwrap();
    let bound = theorem1_bound(n);
    let label = format!("q_1 + q_{}", n - 1);
    if sum < bound {
        BoundCertificate::fired(c, Direction::UpperBound, n, n - 4, vec![Witness::new(0, label, sum, Relation::Lt, bound)])
    } else {
        BoundCertificate::silent(c, Direction::UpperBound, n, vec![Witness::new(0, label, sum, Relation::Ge, bound)])
    }
}

/// `max(q_1, q_{n-1}) < (2n^2 - 6n)/(n-2)^2` certifies at most `n - 4` real
/// roots.
pub fn corollary1_test(p: &Poly) -> BoundCertificate {
    let c = Criterion::Cor1;
    if let Some(na) = positive_degree_four(p, c) {
        return na;
    }
    let n = p.degree();
    let bound = theorem1_bound(n) / int(2);
    let q1 = q_at(p, 1).unwrap();
    let ql = q_at(p, n - 1).unwrap();
    let (k, top) = if ql > q1 { (n - 1, ql.clone()) } else { (1, q1.clone()) };
    if top < bound {
        let ws = vec![Witness::q(1, q1, Relation::Lt, bound.clone()), Witness::q(n - 1, ql, Relation::Lt, bound)];
        BoundCertificate::fired(c, Direction::UpperBound, n, n - 4, ws)
    } else {
        BoundCertificate::silent(c, Direction::UpperBound, n, vec![Witness::q(k, top, Relation::Ge, bound)])
    }
}

/// The two thresholds for `q_j` and `q_{m+j}` at parameters `(m, j)`.
pub fn corollary2_bounds(n: usize, m: usize, j: usize) -> (Rational, Rational) {
    let (n, m, j) = (n as i64, m as i64, j as i64);
    let base = frac((m - 1) * (m + 1), m * m);
    let first = &base * frac(n - j + 1, n - j) * frac(j + 1, j);
    let second = &base * frac(n - m - j + 1, n - m - j) * frac(m + j + 1, m + j);
    (first, second)
}

fn check_pair(n: usize, m: usize, j: usize) -> Result<()> {
    let ok = n >= 4 && (2..=n - 2).contains(&m) && j >= 1 && j + m < n;
    if ok {
        Ok(())
    } else {
        Err(Error::BadParams(format!(
            "need 2 <= m <= n-2 and 1 <= j <= n-m-1 (n = {n}, m = {m}, j = {j})"
        )))
    }
}

/// Both `q_j` and `q_{m+j}` strictly below their thresholds certifies at
/// most `n - 4` real roots.
pub fn corollary2_test(p: &Poly, m: usize, j: usize) -> Result<BoundCertificate> {
    let n = p.degree();
    check_pair(n, m, j)?;
    let c = Criterion::Cor2;
    if let Some(na) = positive_degree_four(p, c) {
        return Ok(na);
    }
    let (b_first, b_second) = corollary2_bounds(n, m, j);
    let qa = q_at(p, j).unwrap();
    let qb = q_at(p, m + j).unwrap();
    let wa = if qa < b_first {
        Witness::q(j, qa, Relation::Lt, b_first)
    } else {
        Witness::q(j, qa, Relation::Ge, b_first)
    };
    let wb = if qb < b_second {
        Witness::q(m + j, qb, Relation::Lt, b_second)
    } else {
        Witness::q(m + j, qb, Relation::Ge, b_second)
    };
    let d = Direction::UpperBound;
    Ok(match (wa.relation, wb.relation) {
        (Relation::Lt, Relation::Lt) => BoundCertificate::fired(c, d, n, n - 4, vec![wa, wb]),
        _ => {
            let fails = [wa, wb].into_iter().filter(|w| w.relation != Relation::Lt).collect();
            BoundCertificate::silent(c, d, n, fails)
        }
    })
}

/// Every legal `(m, j)` with its certificate.
pub fn corollary2_sweep(p: &Poly) -> Vec<((usize, usize), BoundCertificate)> {
    let n = p.degree();
    if n < 4 {
        return Vec::new();
    }
    let pairs: Vec<_> = (2..=n - 2).flat_map(|m| (1..n - m).map(move |j| (m, j))).collect();
    pairs
        .into_par_iter()
        .map(|(m, j)| ((m, j), corollary2_test(p, m, j).expect("legal pair")))
        .collect()
}

/// The first fired certificate of the sweep, else a silent one.
pub fn corollary2_any(p: &Poly) -> BoundCertificate {
    let c = Criterion::Cor2;
    if let Some(na) = positive_degree_four(p, c) {
        return na;
    }
    let sweep = corollary2_sweep(p);
    sweep
        .into_iter()
        .map(|(_, cert)| cert)
        .find(|cert| cert.fired)
        .unwrap_or_else(|| BoundCertificate::silent(c, Direction::UpperBound, p.degree(), Vec::new()))
}

/// A factor `x^2 + 2a x + b`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadraticPair {
    #[serde(with = "rational::serde_str")]
    pub a: Rational,
    #[serde(with = "rational::serde_str")]
    pub b: Rational,
}

impl QuadraticPair {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadraticPair { a, b }
    }

    pub fn poly(&self) -> Poly {
        Poly::new(vec![self.b.clone(), &self.a * int(2), int(1)])
    }

    fn admissible(&self) -> bool {
        self.a > int(0) && self.b > int(0) && &self.a * &self.a >= self.b
    }
}

/// `(x^2 + 2t x + 1/(b_1...b_{n-1})) * prod (x^2 + 2a_j x + b_j)`, degree `2n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvenFactorForm {
    pub pairs: Vec<QuadraticPair>,
    #[serde(with = "rational::serde_str")]
    pub t: Rational,
}

/// `(x + c)(x^2 + 2t x + 1/(b_1...b_{n-1} c)) * prod (x^2 + 2a_j x + b_j)`,
/// degree `2n + 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OddFactorForm {
    pub pairs: Vec<QuadraticPair>,
    #[serde(with = "rational::serde_str")]
    pub t: Rational,
    #[serde(with = "rational::serde_str")]
    pub c: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum FactorForm {
    Even(EvenFactorForm),
    Odd(OddFactorForm),
}

impl FactorForm {
    /// `n` in the degree `2n` or `2n + 1`.
    pub fn half_degree(&self) -> usize {
        match self {
            FactorForm::Even(f) => f.pairs.len() + 1,
            FactorForm::Odd(f) => f.pairs.len() + 1,
        }
    }

    fn pairs(&self) -> &[QuadraticPair] {
        match self {
            FactorForm::Even(f) => &f.pairs,
            FactorForm::Odd(f) => &f.pairs,
        }
    }

    fn t(&self) -> &Rational {
        match self {
            FactorForm::Even(f) => &f.t,
            FactorForm::Odd(f) => &f.t,
        }
    }

    fn check(&self) -> std::result::Result<(), String> {
        if let Some(i) = self.pairs().iter().position(|q| !q.admissible()) {
            return Err(format!("pair {} violates a > 0, b > 0, a^2 >= b", i + 1));
        }
        if self.t() < &int(0) {
            return Err("requires t >= 0".into());
        }
        match self {
            FactorForm::Even(f) if f.pairs.is_empty() => Err("even form needs at least one quadratic pair".into()),
            FactorForm::Odd(f) if f.c <= int(0) => Err("requires c > 0".into()),
            _ => Ok(()),
        }
    }

    /// The expanded polynomial.
    pub fn expand(&self) -> Poly {
        let prod_b = self.pairs().iter().fold(int(1), |acc, q| acc * &q.b);
        let mut constant = int(1) / prod_b;
        let mut out = Poly::one();
        if let FactorForm::Odd(f) = self {
            constant /= &f.c;
            out = Poly::new(vec![f.c.clone(), int(1)]);
        }
        out = &out * &Poly::new(vec![constant, self.t() * int(2), int(1)]);
        for q in self.pairs() {
            out = &out * &q.poly();
        }
        out
    }
}

/// `2(2n^2 - 3n)/(n-1)^2` for the degree `2n` form.
pub fn theorem3_bound(n: usize) -> Rational {
    let n = n as i64;
    frac(2 * (2 * n * n - 3 * n), (n - 1) * (n - 1))
}

/// `8(2n^2 - n - 1)/(2n-1)^2` for the degree `2n + 1` form.
pub fn theorem4_bound(n: usize) -> Rational {
    let n = n as i64;
    frac(8 * (2 * n * n - n - 1), (2 * n - 1) * (2 * n - 1))
}

/// Result of checking the sum lower bound on a factored form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarginCertificate {
    pub criterion: Criterion,
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub degree: usize,
    #[serde(with = "rational::serde_str_opt")]
    pub q_first: Option<Rational>,
    #[serde(with = "rational::serde_str_opt")]
    pub q_last: Option<Rational>,
    #[serde(with = "rational::serde_str_opt")]
    pub bound: Option<Rational>,
    /// `q_1 + q_{last} - bound`; the asserted inequality holds iff this is
    /// non-negative.
    #[serde(with = "rational::serde_str_opt")]
    pub margin: Option<Rational>,
    pub holds: bool,
}

pub fn theorem3_4_sum_check(form: &FactorForm) -> MarginCertificate {
    let criterion = match form {
        FactorForm::Even(_) => Criterion::Thm3,
        FactorForm::Odd(_) => Criterion::Thm4,
    };
    let n = form.half_degree();
    let degree = match form {
        FactorForm::Even(_) => 2 * n,
        FactorForm::Odd(_) => 2 * n + 1,
    };
    let mut cert = MarginCertificate {
        criterion,
        applicable: false,
        reason: None,
        degree,
        q_first: None,
        q_last: None,
        bound: None,
        margin: None,
        holds: false,
    };
    if let Err(why) = form.check() {
        cert.reason = Some(why);
        return cert;
    }
    let p = form.expand();
    debug_assert_eq!(p.degree(), degree);
    let bound = match form {
        FactorForm::Even(_) => theorem3_bound(n),
        FactorForm::Odd(_) => theorem4_bound(n),
    };
    let (q1, ql) = match (q_at(&p, 1), q_at(&p, degree - 1)) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            cert.reason = Some("expanded polynomial has a vanishing coefficient".into());
            return cert;
        }
    };
    let margin = &q1 + &ql - &bound;
    cert.applicable = true;
    cert.holds = margin >= int(0);
    cert.q_first = Some(q1);
    cert.q_last = Some(ql);
    cert.bound = Some(bound);
    cert.margin = Some(margin);
    cert
}
