//! Certified rational enclosures of `1 / cos^2(pi / d)`.
//!
//! `pi` comes from Machin's formula and `cos` from its Taylor series; both
//! series alternate with decreasing terms on the ranges used here, so
//! consecutive partial sums bracket the true value. Bounds are rounded
//! outward to dyadic rationals to keep sizes in check.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::rational::{self, Rational};

pub const DEFAULT_PRECISION_BITS: u32 = 128;

/// `lower <= target <= upper`, `upper - lower <= 2^-precision_bits * max(1, upper)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertifiedConstant {
    #[serde(with = "rational::serde_str")]
    pub lower: Rational,
    #[serde(with = "rational::serde_str")]
    pub upper: Rational,
    pub target: String,
    pub precision_bits: u32,
}

impl CertifiedConstant {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    /// Multiplies the enclosure by a positive rational.
    pub fn scaled(&self, factor: &Rational, target: String) -> CertifiedConstant {
        CertifiedConstant {
            lower: &self.lower * factor,
            upper: &self.upper * factor,
            target,
            precision_bits: self.precision_bits,
        }
    }

    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }
}

/// Enclosure of `atan(1/k)` for an integer `k >= 2`, terms until the next
/// one is below `2^-bits`.
fn atan_inv(k: i64, bits: u32) -> (Rational, Rational) {
    let eps = Rational::new(BigInt::one(), BigInt::one() << bits);
    let x = rational::frac(1, k);
    let x2 = &x * &x;
    let mut power = x.clone();
    let mut sum = Rational::zero();
    let mut i = 0i64;
    loop {
        let term = &power / rational::int(2 * i + 1);
        if i % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        power *= &x2;
        let next = &power / rational::int(2 * i + 3);
        if next < eps {
            // next term has the opposite sign of the last one added
            let other = if i % 2 == 0 { &sum - &next } else { &sum + &next };
            return if other < sum { (other, sum) } else { (sum, other) };
        }
        i += 1;
    }
}

/// Rational enclosure of `pi` of width about `2^-bits`.
pub fn pi_enclosure(bits: u32) -> (Rational, Rational) {
    let work = bits + 8;
    let (a_lo, a_hi) = atan_inv(5, work);
    let (b_lo, b_hi) = atan_inv(239, work);
    let lo = rational::int(16) * a_lo - rational::int(4) * b_hi;
    let hi = rational::int(16) * a_hi - rational::int(4) * b_lo;
    (rational::floor_dyadic(&lo, work), rational::ceil_dyadic(&hi, work))
}

/// Enclosure of `cos(x)` for rational `0 <= x <= 3/2`.
fn cos_enclosure(x: &Rational, bits: u32) -> (Rational, Rational) {
    debug_assert!(x >= &Rational::zero() && x <= &rational::frac(3, 2));
    let eps = Rational::new(BigInt::one(), BigInt::one() << bits);
    let x2 = x * x;
    let mut term = Rational::one();
    let mut sum = Rational::zero();
    let mut i = 0i64;
    loop {
        if i % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        term = &term * &x2 / rational::int((2 * i + 1) * (2 * i + 2));
        if term < eps {
            let other = if i % 2 == 0 { &sum - &term } else { &sum + &term };
            return if other < sum { (other, sum) } else { (sum, other) };
        }
        i += 1;
    }
}

/// Exact values of `1/cos^2(pi/d)` where `cos^2` is rational.
fn exact_inv_cos_sq(d: u64) -> Option<Rational> {
    match d {
        3 => Some(rational::int(4)),
        4 => Some(rational::int(2)),
        6 => Some(rational::frac(4, 3)),
        _ => None,
    }
}

/// Certified enclosure of `1 / cos^2(pi / (m + 2))` for `m >= 1`. Results
/// are memoized per `(m, precision_bits)`.
pub fn certified_inv_cos_sq(m: u64, precision_bits: u32) -> CertifiedConstant {
    assert!(m >= 1, "m must be at least 1");
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), CertifiedConstant>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().unwrap().get(&(m, precision_bits)) {
        return c.clone();
    }
    let c = compute_inv_cos_sq(m, precision_bits);
    cache.lock().unwrap().insert((m, precision_bits), c.clone());
    c
}

fn compute_inv_cos_sq(m: u64, precision_bits: u32) -> CertifiedConstant {
    let d = m + 2;
    let target = format!("1/cos^2(pi/{d})");
    if let Some(v) = exact_inv_cos_sq(d) {
        return CertifiedConstant { lower: v.clone(), upper: v, target, precision_bits };
    }
    let mut work = precision_bits + 16;
    loop {
        let (pi_lo, pi_hi) = pi_enclosure(work);
        let den = rational::int(d as i64);
        // cos is decreasing on [0, pi/3]
        let (c_lo, _) = cos_enclosure(&(pi_hi / &den), work);
        let (_, c_hi) = cos_enclosure(&(pi_lo / &den), work);
        let lower = rational::floor_dyadic(&(&c_hi * &c_hi).recip(), work);
        let upper = rational::ceil_dyadic(&(&c_lo * &c_lo).recip(), work);
        let scale = if upper > Rational::one() { upper.clone() } else { Rational::one() };
        let allowed = scale / Rational::from_integer(BigInt::one() << precision_bits);
        if &upper - &lower <= allowed {
            return CertifiedConstant { lower, upper, target, precision_bits };
        }
        work += 16;
    }
}
