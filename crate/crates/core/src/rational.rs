//! Helpers around [`BigRational`]: parsing, dyadic rounding, logarithms and
//! string serialization for JSON reports.

use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_rational::BigRational as Rational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"-3"`, `"+7"` or `"22/7"`.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}

/// `"p/q"` in lowest terms, or `"p"` for integers.
pub fn to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn pow(r: &Rational, exp: usize) -> Rational {
    num_traits::pow(r.clone(), exp)
}

/// Largest multiple of `2^-bits` not exceeding `r`.
pub fn floor_dyadic(r: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = r * Rational::from_integer(scale.clone());
    Rational::new(scaled.floor().to_integer(), scale)
}

/// Smallest multiple of `2^-bits` not below `r`.
pub fn ceil_dyadic(r: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = r * Rational::from_integer(scale.clone());
    Rational::new(scaled.ceil().to_integer(), scale)
}

fn ln_bigint(n: &BigInt) -> f64 {
    debug_assert!(n.sign() == Sign::Plus);
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of a positive rational, evaluated without overflowing
/// on huge numerators or denominators. Reporting only.
pub fn ln(r: &Rational) -> f64 {
    assert!(r.is_positive(), "ln of a non-positive rational");
    ln_bigint(r.numer()) - ln_bigint(r.denom())
}

pub fn to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * ln(&r.abs()).exp()
}

/// Rational with denominator `2^bits` closest to `x` (ties away from zero).
pub fn from_f64_dyadic(x: f64, bits: u32) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let scaled = (x * (1u64 << bits) as f64).round();
    let num = Rational::from_float(scaled)?.to_integer();
    Some(Rational::new(num, BigInt::one() << bits))
}

/// Integer square root test: `Some(s)` when `r = s^2` for a rational `s >= 0`.
pub fn exact_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Encloses `sqrt(r)` in `[lo, hi]` with `hi - lo <= 2^-bits`.
pub fn sqrt_enclosure(r: &Rational, bits: u32) -> (Rational, Rational) {
    assert!(!r.is_negative());
    if let Some(s) = exact_sqrt(r) {
        return (s.clone(), s);
    }
    let mut lo = Rational::zero();
    let mut hi = if r > &Rational::one() { r.clone() } else { Rational::one() };
    let width = Rational::new(BigInt::one(), BigInt::one() << bits);
    let two = int(2);
    while &hi - &lo > width {
        let mid = (&lo + &hi) / &two;
        if &(&mid * &mid) <= r {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// serde adapter writing rationals as `"p/q"` strings.
pub mod serde_str {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).ok_or_else(|| D::Error::custom(format!("not a rational: {s:?}")))
    }
}

pub mod serde_str_vec {
    use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&super::to_string(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| super::parse(s).ok_or_else(|| D::Error::custom(format!("not a rational: {s:?}"))))
            .collect()
    }
}

pub mod serde_str_opt {
    use serde::Serializer;

    use super::Rational;

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&super::to_string(r)),
            None => s.serialize_none(),
        }
    }
}
