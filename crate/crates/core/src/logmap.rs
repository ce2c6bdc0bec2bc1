//! Logarithmic coordinates on positive-coefficient polynomials and the
//! orthant cones cut out by `q_j` inequalities.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::count_real_roots;
use crate::poly::Poly;
use crate::qseq::{coeffs_from_q, q_at};
use crate::rational::{self, int, Rational};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LogPoint {
    /// `alpha_1 .. alpha_{n-1}` after normalizing to `a_0 = a_n = 1`.
    pub alpha: Vec<f64>,
    /// `kappa_j = 2 alpha_j - alpha_{j-1} - alpha_{j+1} = log q_j`.
    pub kappa: Vec<f64>,
    /// Exact `q_1 .. q_{n-1}`.
    #[serde(with = "rational::serde_str_vec")]
    pub q: Vec<Rational>,
    #[serde(with = "rational::serde_str_vec")]
    pub coefficients: Vec<Rational>,
    /// Whether the input was already monic with constant term 1.
    pub normalized_input: bool,
}

fn require_positive(p: &Poly) -> Result<()> {
    if p.is_zero() || !p.all_positive() {
        return Err(Error::NotApplicable("requires all coefficients strictly positive".into()));
    }
    Ok(())
}

/// Log coordinates of `p`. Inputs with `a_0 != 1` or `a_n != 1` are moved to
/// that slice by the action `a P(b x)`, carried out on the logarithms.
pub fn log_image(p: &Poly) -> Result<LogPoint> {
    require_positive(p)?;
    let n = p.degree();
    let logs: Vec<f64> = p.coeffs().iter().map(rational::ln).collect();
    let (l0, ln) = (logs[0], logs[n]);
    let slope = if n == 0 { 0.0 } else { (ln - l0) / n as f64 };
    let full: Vec<f64> = (0..=n).map(|j| logs[j] - l0 - j as f64 * slope).collect();
    let alpha = full[1..n.max(1)].to_vec();
    let kappa = (1..n).map(|j| 2.0 * full[j] - full[j - 1] - full[j + 1]).collect();
    let q = (1..n).map(|j| q_at(p, j).unwrap()).collect();
    let one = int(1);
    Ok(LogPoint {
        alpha,
        kappa,
        q,
        coefficients: p.coeffs().to_vec(),
        normalized_input: p.coeff(0) == one && p.leading() == one,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "<")]
    Less,
    #[serde(rename = ">")]
    Greater,
}

/// `q_j sigma_j epsilon_j` for `j = 1..n-1`. Strict unless `non_strict`
/// (which turns `>` into `>=` and `<` into `<=`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeSpec {
    pub sigma: Vec<Sign>,
    #[serde(with = "rational::serde_str_vec")]
    pub epsilon: Vec<Rational>,
    #[serde(default)]
    pub non_strict: bool,
}

impl ConeSpec {
    pub fn uniform(len: usize, sign: Sign, epsilon: Rational, non_strict: bool) -> Self {
        ConeSpec { sigma: vec![sign; len], epsilon: vec![epsilon; len], non_strict }
    }

    /// `q_j >= 4` everywhere.
    pub fn hutchinson(degree: usize) -> Self {
        Self::uniform(degree.saturating_sub(1), Sign::Greater, int(4), true)
    }

    pub fn validate(&self, degree: usize) -> Result<()> {
        if self.sigma.len() != self.epsilon.len() {
            return Err(Error::BadSpec(format!(
                "sigma has {} entries, epsilon has {}",
                self.sigma.len(),
                self.epsilon.len()
            )));
        }
        if self.sigma.len() + 1 != degree {
            return Err(Error::BadSpec(format!(
                "degree {degree} needs {} entries, spec has {}",
                degree.saturating_sub(1),
                self.sigma.len()
            )));
        }
        if let Some(e) = self.epsilon.iter().find(|e| !e.is_positive()) {
            return Err(Error::BadSpec(format!("epsilon must be positive, got {}", rational::to_string(e))));
        }
        Ok(())
    }

    /// Exact test of one coordinate.
    pub fn admits(&self, j: usize, q: &Rational) -> bool {
        let e = &self.epsilon[j - 1];
        match (self.sigma[j - 1], self.non_strict) {
            (Sign::Greater, false) => q > e,
            (Sign::Greater, true) => q >= e,
            (Sign::Less, false) => q < e,
            (Sign::Less, true) => q <= e,
        }
    }

    fn admits_all(&self, q: &[Rational]) -> bool {
        q.iter().enumerate().all(|(i, qj)| self.admits(i + 1, qj))
    }
}

pub fn cone_membership(p: &Poly, spec: &ConeSpec) -> Result<bool> {
    require_positive(p)?;
    spec.validate(p.degree())?;
    Ok((1..p.degree()).all(|j| spec.admits(j, &q_at(p, j).unwrap())))
}

/// Determinant of the `(n-1) x (n-1)` matrix with 2 on the diagonal and -1
/// beside it, by fraction-free elimination.
pub fn kappa_matrix_determinant(n: usize) -> BigInt {
    assert!(n >= 2, "kappa matrix needs n >= 2");
    let size = n - 1;
    let mut m: Vec<Vec<BigInt>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| match i.abs_diff(j) {
                    0 => BigInt::from(2),
                    1 => BigInt::from(-1),
                    _ => BigInt::zero(),
                })
                .collect()
        })
        .collect();
    bareiss_determinant(&mut m)
}

fn bareiss_determinant(m: &mut [Vec<BigInt>]) -> BigInt {
    let size = m.len();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..size {
        if m[k][k].is_zero() {
            match (k + 1..size).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    if size == 0 {
        return BigInt::from(1);
    }
    prev * sign
}

/// Box for sampling inside a cone: each `|log(q_j / epsilon_j)|` is drawn
/// uniformly from `[0, log_span)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleBox {
    pub log_span: f64,
    /// Bits of the dyadic rationals the samples are rounded to.
    pub bits: u32,
}

impl Default for SampleBox {
    fn default() -> Self {
        SampleBox { log_span: 2.0, bits: 32 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleSummary {
    pub degree: usize,
    pub samples: usize,
    pub seed: u64,
    /// Real root count (with multiplicity) to number of samples.
    pub histogram: BTreeMap<usize, usize>,
}

fn draw_q(spec: &ConeSpec, j: usize, rng: &mut ChaCha8Rng, bx: &SampleBox) -> Rational {
    let eps = rational::to_f64(&spec.epsilon[j - 1]);
    loop {
        let u: f64 = rng.random_range(0.0..bx.log_span);
        let x = match spec.sigma[j - 1] {
            Sign::Greater => eps * u.exp(),
            Sign::Less => eps * (-u).exp(),
        };
        if let Some(q) = rational::from_f64_dyadic(x, bx.bits) {
            if q.is_positive() && spec.admits(j, &q) {
                return q;
            }
        }
    }
}

/// Draws `samples` q-vectors in the cone, rebuilds each polynomial with
/// `a_0 = a_1 = 1`, and tallies oracle root counts. Sample `i` uses its own
/// generator stream, so the result does not depend on scheduling.
pub fn sample_cone_vs_strata(spec: &ConeSpec, degree: usize, samples: usize, seed: u64, bx: SampleBox) -> Result<SampleSummary> {
    if degree < 2 {
        return Err(Error::BadParams("cone sampling needs degree >= 2".into()));
    }
    spec.validate(degree)?;
    let one = int(1);
    let counts: Vec<usize> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let q: Vec<Rational> = (1..degree).map(|j| draw_q(spec, j, &mut rng, &bx)).collect();
            debug_assert!(spec.admits_all(&q));
            let p = coeffs_from_q(&one, &one, &q)?;
            Ok(count_real_roots(&p)?.total_with_multiplicity)
        })
        .collect::<Result<_>>()?;
    let mut histogram = BTreeMap::new();
    for c in counts {
        *histogram.entry(c).or_insert(0) += 1;
    }
    Ok(SampleSummary { degree, samples, seed, histogram })
}
