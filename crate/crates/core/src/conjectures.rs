//! Descartes-type conjectural bounds and the harness that runs them on the
//! counterexample tower.

use std::cmp::Ordering;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::counterexample_tower;
use crate::error::{Error, Result};
use crate::oracle::{count_real_roots, count_real_roots_deflating};
use crate::poly::Poly;
use crate::rational::{self, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ConjectureId {
    TropicalC1,
    NewtonWeightedC2,
    LogConcaveC3,
}

impl ConjectureId {
    pub fn from_number(k: u8) -> Option<Self> {
        match k {
            1 => Some(ConjectureId::TropicalC1),
            2 => Some(ConjectureId::NewtonWeightedC2),
            3 => Some(ConjectureId::LogConcaveC3),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub conjecture: ConjectureId,
    pub degree: usize,
    pub predicted_bound: usize,
    pub actual_roots: usize,
    pub violated: bool,
    /// Index set kept by the threshold (C2, C3) or the upper hull vertices (C1).
    pub indices: Vec<usize>,
    /// Interior indices dropped by the threshold, or points strictly below
    /// or on the hull without being a corner.
    pub excluded: Vec<usize>,
}

fn require_positive(p: &Poly) -> Result<()> {
    if p.is_zero() || !p.all_positive() {
        return Err(Error::NotApplicable("requires all coefficients strictly positive".into()));
    }
    Ok(())
}

/// Hull vertices of `(k, log(a_k C(n,k)))` that are strict corners of the
/// upper envelope, found with exact power comparisons.
/// Zero coefficients contribute no point (their log is minus infinity).
pub fn tropical_hull(p: &Poly) -> Result<Vec<usize>> {
    if p.is_zero() || p.coeffs().iter().any(|c| c < &int(0)) {
        return Err(Error::NotApplicable("requires nonzero polynomial with non-negative coefficients".into()));
    }
    let n = p.degree();
    let w: Vec<Rational> = (0..=n)
        .map(|k| p.coeff(k) * Rational::from_integer(rational::binomial(n, k)))
        .collect();
    // j strictly above the chord from i to k iff (w_j/w_i)^{k-j} > (w_k/w_j)^{j-i}
    let turns = |i: usize, j: usize, k: usize| {
        let left = rational::pow(&(&w[j] / &w[i]), k - j);
        let right = rational::pow(&(&w[k] / &w[j]), j - i);
        left.cmp(&right) == Ordering::Greater
    };
    let mut hull: Vec<usize> = Vec::with_capacity(n + 1);
    for k in (0..=n).filter(|&k| !w[k].is_zero()) {
        while hull.len() >= 2 && !turns(hull[hull.len() - 2], hull[hull.len() - 1], k) {
            hull.pop();
        }
        hull.push(k);
    }
    Ok(hull)
}

/// Corners of `t -> max_k (log a_k + k t + log C(n,k))`.
pub fn tropical_corner_count(p: &Poly) -> Result<usize> {
    Ok(tropical_hull(p)?.len() - 1)
}

/// Which threshold builds the index set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexRule {
    /// `a_k^2 - a_{k-1} a_{k+1}` against zero.
    LogConcave { strict: bool },
    /// `(k+1) a_k^2 - k a_{k-1} a_{k+1}` against zero.
    NewtonWeighted { strict: bool },
}

/// Indices `0..=n` that pass the rule, with `a_{-1} = a_{n+1} = 0`.
pub fn index_set(p: &Poly, rule: IndexRule) -> Vec<usize> {
    let n = p.degree();
    let a = |k: isize| if k < 0 || k as usize > n { int(0) } else { p.coeff(k as usize) };
    let zero = int(0);
    (0..=n)
        .filter(|&k| {
            let ki = k as isize;
            let sq = a(ki) * a(ki);
            let cross = a(ki - 1) * a(ki + 1);
            let (value, strict) = match rule {
                IndexRule::LogConcave { strict } => (sq - cross, strict),
                IndexRule::NewtonWeighted { strict } => {
                    (sq * int(k as i64 + 1) - cross * int(k as i64), strict)
                }
            };
            if strict {
                value > zero
            } else {
                value >= zero
            }
        })
        .collect()
}

/// Adjacent parity changes along an increasing index list.
pub fn parity_changes(indices: &[usize]) -> usize {
    indices.windows(2).filter(|w| w[0] % 2 != w[1] % 2).count()
}

fn report(conjecture: ConjectureId, p: &Poly, indices: Vec<usize>, predicted: usize, actual: usize) -> ConjectureReport {
    let excluded = (0..=p.degree()).filter(|k| !indices.contains(k)).collect();
    ConjectureReport {
        conjecture,
        degree: p.degree(),
        predicted_bound: predicted,
        actual_roots: actual,
        violated: actual > predicted,
        indices,
        excluded,
    }
}

fn rule_report(p: &Poly, id: ConjectureId, rule: IndexRule, actual: usize) -> ConjectureReport {
    let idx = index_set(p, rule);
    let v = parity_changes(&idx);
    report(id, p, idx, v, actual)
}

fn oracle_roots(p: &Poly) -> Result<usize> {
    Ok(count_real_roots(p)?.total_with_multiplicity)
}

pub fn conj1_bound(p: &Poly) -> Result<ConjectureReport> {
    let hull = tropical_hull(p)?;
    let corners = hull.len() - 1;
    Ok(report(ConjectureId::TropicalC1, p, hull, corners, oracle_roots(p)?))
}

/// Index set `{k : (k+1) a_k^2 - k a_{k-1} a_{k+1} > 0}`.
pub fn conj2_bound(p: &Poly) -> Result<ConjectureReport> {
    require_positive(p)?;
    Ok(rule_report(p, ConjectureId::NewtonWeightedC2, IndexRule::NewtonWeighted { strict: true }, oracle_roots(p)?))
}

/// Index set `{k : a_k^2 - a_{k-1} a_{k+1} >= 0}`.
pub fn conj3_bound(p: &Poly) -> Result<ConjectureReport> {
    require_positive(p)?;
    Ok(rule_report(p, ConjectureId::LogConcaveC3, IndexRule::LogConcave { strict: false }, oracle_roots(p)?))
}

pub fn conjecture_report(p: &Poly, id: ConjectureId) -> Result<ConjectureReport> {
    match id {
        ConjectureId::TropicalC1 => conj1_bound(p),
        ConjectureId::NewtonWeightedC2 => conj2_bound(p),
        ConjectureId::LogConcaveC3 => conj3_bound(p),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerEntry {
    pub n: usize,
    pub conj1: ConjectureReport,
    pub conj2: ConjectureReport,
    pub conj3: ConjectureReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerSweep {
    pub entries: Vec<TowerEntry>,
    pub conj3_violated_everywhere: bool,
    /// Smallest `n` in the sweep where the second conjecture fails.
    pub first_conj2_violation: Option<usize>,
}

impl TowerSweep {
    pub fn reports(&self, id: ConjectureId) -> Vec<ConjectureReport> {
        self.entries
            .iter()
            .map(|e| match id {
                ConjectureId::TropicalC1 => e.conj1.clone(),
                ConjectureId::NewtonWeightedC2 => e.conj2.clone(),
                ConjectureId::LogConcaveC3 => e.conj3.clone(),
            })
            .collect()
    }
}

/// Runs all three conjectures on `Q_15 .. Q_{n_max}`. Root counts deflate
/// the known root `-1` before the Sturm count.
pub fn verify_counterexamples(n_max: usize) -> Result<TowerSweep> {
    let tower = counterexample_tower(n_max)?;
    let minus_one = int(-1);
    let entries: Vec<TowerEntry> = tower
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let actual = count_real_roots_deflating(p, &minus_one)?.total_with_multiplicity;
            let hull = tropical_hull(p)?;
            let corners = hull.len() - 1;
            Ok(TowerEntry {
                n: 15 + i,
                conj1: report(ConjectureId::TropicalC1, p, hull, corners, actual),
                conj2: rule_report(p, ConjectureId::NewtonWeightedC2, IndexRule::NewtonWeighted { strict: true }, actual),
                conj3: rule_report(p, ConjectureId::LogConcaveC3, IndexRule::LogConcave { strict: false }, actual),
            })
        })
        .collect::<Result<_>>()?;
    let conj3_violated_everywhere = entries.iter().all(|e| e.conj3.violated);
    let first_conj2_violation = entries.iter().find(|e| e.conj2.violated).map(|e| e.n);
    Ok(TowerSweep { entries, conj3_violated_everywhere, first_conj2_violation })
}
