//! Reference implementations that share no code with the library: a
//! Descartes bisection root counter over integer coefficients, dense
//! rational polynomial helpers, ratios and a Gaussian-elimination
//! determinant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn trim(mut v: Vec<Q>) -> Vec<Q> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

pub fn mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn eval(a: &[Q], x: &Q) -> Q {
    a.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

fn deriv(a: &[Q]) -> Vec<Q> {
    a.iter().enumerate().skip(1).map(|(k, c)| c * Q::from_integer(BigInt::from(k))).collect()
}

fn rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    let lead = b.last().unwrap();
    while r.len() >= b.len() {
        let f = r.last().unwrap() / lead;
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn quo(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    let lead = b.last().unwrap().clone();
    let mut out = vec![Q::zero(); a.len() + 1 - b.len()];
    while r.len() >= b.len() {
        let f = r.last().unwrap() / &lead;
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        out[shift] = f;
        r.pop();
    }
    out
}

fn gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    let lead = a.last().unwrap().clone();
    a.iter().map(|c| c / &lead).collect()
}

fn primitive(a: &[Q]) -> Vec<BigInt> {
    let den = a.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = a.iter().map(|c| (c * Q::from_integer(den.clone())).to_integer()).collect();
    normalize(ints)
}

fn normalize(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}

fn variations(v: &[BigInt]) -> usize {
    let signs: Vec<bool> = v.iter().filter(|c| !c.is_zero()).map(Signed::is_positive).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Coefficients of `f(x + 1)`.
fn shift_one(f: &[BigInt]) -> Vec<BigInt> {
    let mut c = f.to_vec();
    let n = c.len();
    for i in 0..n {
        for k in (i..n - 1).rev() {
            let t = c[k + 1].clone();
            c[k] += t;
        }
    }
    c
}

/// `2^n f(x/2)`.
fn halve(f: &[BigInt]) -> Vec<BigInt> {
    let n = f.len() - 1;
    f.iter().enumerate().map(|(i, c)| c << (n - i)).collect()
}

/// Roots of a square-free `f` in the open interval `(0, 1)`.
fn roots_in_unit(f: &[BigInt]) -> usize {
    // a root at 0 is an endpoint, not counted here
    let low = f.iter().position(|c| !c.is_zero()).unwrap();
    let f = &f[low..];
    let mut rev = f.to_vec();
    rev.reverse();
    match variations(&shift_one(&rev)) {
        0 => return 0,
        1 => return 1,
        _ => {}
    }
    let left = normalize(halve(f));
    let mid = usize::from(left.iter().sum::<BigInt>().is_zero());
    let right = normalize(shift_one(&left));
    roots_in_unit(&left) + mid + roots_in_unit(&right)
}

/// Positive roots of a square-free integer polynomial with `f(0) != 0`.
fn positive_roots(f: &[BigInt]) -> usize {
    let lead = f.last().unwrap().abs();
    let max = f.iter().map(Signed::abs).max().unwrap();
    // every root is below 1 + max/|lead| <= 2^k
    let bound = Q::one() + Q::new(max, lead);
    let mut k = 0usize;
    while Q::from_integer(BigInt::one() << k) <= bound {
        k += 1;
    }
    let scaled: Vec<BigInt> = f.iter().enumerate().map(|(i, c)| c << (k * i)).collect();
    roots_in_unit(&normalize(scaled))
}

fn distinct_real(a: &[Q]) -> usize {
    let a = trim(a.to_vec());
    if a.len() <= 1 {
        return 0;
    }
    let g = gcd(&a, &deriv(&a));
    let mut sf = quo(&a, &g);
    let mut count = 0;
    if sf[0].is_zero() {
        count += 1;
        sf.remove(0);
    }
    let ints = primitive(&sf);
    let reflected: Vec<BigInt> =
        ints.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect();
    count + positive_roots(&ints) + positive_roots(&reflected)
}

/// Real roots counted with multiplicity: the sum over `k` of the distinct
/// real roots of `gcd(p, p', ..., p^(k-1))`.
pub fn real_roots(a: &[Q]) -> usize {
    let mut g = trim(a.to_vec());
    let mut total = 0;
    while g.len() > 1 {
        total += distinct_real(&g);
        g = gcd(&g, &deriv(&g));
    }
    total
}

/// `a_k^2 / (a_{k-1} a_{k+1})` for `k = 1..n-1`, `None` where undefined.
pub fn ratios(a: &[Q]) -> Vec<Option<Q>> {
    (1..a.len().saturating_sub(1))
        .map(|k| {
            let den = &a[k - 1] * &a[k + 1];
            (!den.is_zero()).then(|| &a[k] * &a[k] / den)
        })
        .collect()
}

pub fn determinant(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut det = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot_row = m[col].clone();
        det *= &pivot_row[col];
        for row in &mut m[col + 1..] {
            let f = &row[col] / &pivot_row[col];
            if f.is_zero() {
                continue;
            }
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x -= &f * p;
            }
        }
    }
    det
}

#[allow(dead_code)]
pub fn self_check() {
    // (x+1)^3 (x^2+1) (x-2): 4 real roots with multiplicity
    let x1 = vec![q(1, 1), q(1, 1)];
    let mut p = mul(&mul(&x1, &x1), &x1);
    p = mul(&p, &[q(1, 1), q(0, 1), q(1, 1)]);
    p = mul(&p, &[q(-2, 1), q(1, 1)]);
    assert_eq!(real_roots(&p), 4);
    assert_eq!(real_roots(&mul(&p, &[q(0, 1), q(0, 1), q(1, 1)])), 6);
    assert_eq!(real_roots(&[q(1, 1), q(0, 1), q(1, 1)]), 0);
}
