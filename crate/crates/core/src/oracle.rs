//! Ground-truth real root counting: Yun square-free decomposition followed by
//! a Sturm chain per factor. Everything is exact; bisection happens on
//! rationals.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{self, Rational};

/// Number of sign changes in `seq` after deleting zeros.
pub fn sign_changes(seq: &[Rational]) -> usize {
    sign_changes_by(seq.iter().map(sign_of))
}

fn sign_of(r: &Rational) -> i8 {
    match r.cmp(&Rational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

pub(crate) fn sign_changes_by(signs: impl IntoIterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in signs.into_iter().filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Yun's algorithm. Returns monic, square-free, pairwise coprime factors
/// with multiplicities, so that `p = lc(p) * prod f_i^{m_i}`. Constants are
/// omitted.
pub fn square_free_decompose(p: &Poly) -> Result<Vec<(Poly, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    if p.degree() == 0 {
        return Ok(out);
    }
    let a = p.monic();
    let da = a.derivative();
    let c = a.gcd(&da);
    let mut w = a.exact_div(&c)?;
    let mut y = da.exact_div(&c)?;
    let mut z = &y - &w.derivative();
    let mut mult = 1;
    while w.degree() > 0 {
        let g = w.gcd(&z);
        if g.degree() > 0 {
            out.push((g.clone(), mult));
        }
        w = w.exact_div(&g)?;
        y = z.exact_div(&g)?;
        z = &y - &w.derivative();
        mult += 1;
    }
    Ok(out)
}

/// Square-free part `p / gcd(p, p')`, monic.
pub fn radical(p: &Poly) -> Result<Poly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == 0 {
        return Ok(Poly::one());
    }
    let g = p.gcd(&p.derivative());
    Ok(p.monic().exact_div(&g)?.monic())
}

/// `1 + max|a_k| / |a_n|`, strictly larger than every root modulus.
pub fn cauchy_bound(p: &Poly) -> Rational {
    let lc = p.leading().abs();
    let max = p.coeffs()[..p.degree()]
        .iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_else(Rational::zero);
    Rational::one() + max / lc
}

/// Smallest power of two `>= r`, for `r >= 1`; keeps bisection points dyadic.
fn pow2_at_least(r: &Rational) -> Rational {
    let mut p = Rational::one();
    while &p < r {
        p *= rational::int(2);
    }
    p
}

/// Signed remainder sequence of a square-free polynomial. Each member is
/// rescaled by a positive constant, which leaves sign patterns unchanged.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<Poly>,
    /// Primitive integer multiples of the members, for sign evaluation.
    integral: Vec<Vec<BigInt>>,
}

/// Positive multiple of `p` with coprime integer coefficients.
fn primitive_integral(p: &Poly) -> Vec<BigInt> {
    let den = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &content).collect()
}

/// Sign of the polynomial with integer coefficients `c` at `x`, from the
/// homogenized sum `sum c_k a^k b^{n-k}` with `x = a/b`, `b > 0`.
fn sign_integral_at(c: &[BigInt], x: &Rational) -> i8 {
    let Some((top, rest)) = c.split_last() else {
        return 0;
    };
    let (a, b) = (x.numer(), x.denom());
    let mut acc = top.clone();
    let mut bp = BigInt::one();
    for ck in rest.iter().rev() {
        bp *= b;
        acc = acc * a + ck * &bp;
    }
    match acc.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

impl SturmChain {
    pub fn new(p: &Poly) -> Self {
        let normalize = |q: Poly| {
            let lc = q.leading().abs();
            if lc.is_zero() {
                q
            } else {
                q.scale(&lc.recip())
            }
        };
        let mut chain = vec![normalize(p.clone())];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(normalize(d));
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]).expect("nonzero divisor");
            if r.is_zero() {
                break;
            }
            chain.push(normalize(-&r));
        }
        let integral = chain.iter().map(primitive_integral).collect();
        SturmChain { chain, integral }
    }

    pub fn members(&self) -> &[Poly] {
        &self.chain
    }

    pub fn values_at(&self, x: &Rational) -> Vec<Rational> {
        self.chain.iter().map(|q| q.eval(x)).collect()
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        sign_changes_by(self.integral.iter().map(|c| sign_integral_at(c, x)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        sign_changes_by(self.chain.iter().map(|q| sign_of(&q.leading())))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        sign_changes_by(self.chain.iter().map(|q| {
            let s = sign_of(&q.leading());
            if q.degree() % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Distinct roots on the whole line.
    pub fn count_all(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }

    /// Distinct roots in the half-open interval `(lo, hi]`.
    pub fn count_half_open(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations_at(lo) - self.variations_at(hi)
    }
}

/// A rational interval holding exactly one distinct real root: the open
/// interval `(lo, hi)` when `lo < hi`, or the exact root when `lo == hi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootInterval {
    #[serde(with = "rational::serde_str")]
    pub lo: Rational,
    #[serde(with = "rational::serde_str")]
    pub hi: Rational,
    pub multiplicity: usize,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        if self.is_exact() {
            x == &self.lo
        } else {
            &self.lo < x && x < &self.hi
        }
    }

    pub fn overlaps(&self, other: &RootInterval) -> bool {
        match (self.is_exact(), other.is_exact()) {
            (true, true) => self.lo == other.lo,
            (true, false) => other.contains(&self.lo),
            (false, true) => self.contains(&other.lo),
            (false, false) => self.lo < other.hi && other.lo < self.hi,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SquareFreeFactor {
    pub factor: Poly,
    pub multiplicity: usize,
    pub real_roots: usize,
}

/// Oracle-certified real root data for a nonzero polynomial.
#[derive(Debug, Clone, Serialize)]
pub struct RootReport {
    pub degree: usize,
    pub total_with_multiplicity: usize,
    pub distinct_count: usize,
    pub square_free_factors: Vec<SquareFreeFactor>,
    /// Sorted left to right, pairwise disjoint.
    pub isolating_intervals: Vec<RootInterval>,
}

struct Isolating {
    lo: Rational,
    hi: Rational,
    factor: usize,
}

fn isolate(poly: &Poly, chain: &SturmChain, factor: usize, out: &mut Vec<Isolating>) {
    let bound = pow2_at_least(&cauchy_bound(poly));
    let mut stack = vec![(-bound.clone(), bound)];
    let two = rational::int(2);
    while let Some((lo, hi)) = stack.pop() {
        match chain.count_half_open(&lo, &hi) {
            0 => {}
            1 => out.push(Isolating { lo, hi, factor }),
            _ => {
                let mid = (&lo + &hi) / &two;
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
}

/// Halves `(lo, hi]` keeping the half that holds the root.
fn refine(iv: &mut Isolating, chains: &[SturmChain]) {
    let mid = (&iv.lo + &iv.hi) / rational::int(2);
    if chains[iv.factor].count_half_open(&iv.lo, &mid) == 1 {
        iv.hi = mid;
    } else {
        iv.lo = mid;
    }
}

fn to_public(iv: &Isolating, factors: &[(Poly, usize)]) -> RootInterval {
    let (f, mult) = &factors[iv.factor];
    if f.degree() == 1 {
        let root = -(f.coeff(0) / f.coeff(1));
        return RootInterval { lo: root.clone(), hi: root, multiplicity: *mult };
    }
    if f.eval(&iv.hi).is_zero() {
        RootInterval { lo: iv.hi.clone(), hi: iv.hi.clone(), multiplicity: *mult }
    } else {
        RootInterval { lo: iv.lo.clone(), hi: iv.hi.clone(), multiplicity: *mult }
    }
}

pub fn count_real_roots(p: &Poly) -> Result<RootReport> {
    let factors = square_free_decompose(p)?;
    report_from_factors(p.degree(), factors)
}

/// Builds the report from a known square-free factorization.
pub(crate) fn report_from_factors(degree: usize, factors: Vec<(Poly, usize)>) -> Result<RootReport> {
    let chains: Vec<SturmChain> = factors.iter().map(|(f, _)| SturmChain::new(f)).collect();
    let mut pieces = Vec::new();
    for (idx, ((f, _), chain)) in factors.iter().zip(&chains).enumerate() {
        isolate(f, chain, idx, &mut pieces);
    }

    // Roots of distinct factors are distinct; refine until pairwise disjoint.
    let intervals = loop {
        pieces.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
        let public: Vec<RootInterval> = pieces.iter().map(|iv| to_public(iv, &factors)).collect();
        let clash: Vec<usize> = (1..public.len())
            .filter(|&i| public[i - 1].overlaps(&public[i]))
            .collect();
        if clash.is_empty() {
            let mut public = public;
            public.sort_by(|a, b| a.lo.cmp(&b.lo));
            break public;
        }
        for i in clash {
            refine(&mut pieces[i - 1], &chains);
            refine(&mut pieces[i], &chains);
        }
    };

    let square_free_factors: Vec<SquareFreeFactor> = factors
        .iter()
        .zip(&chains)
        .map(|((f, m), chain)| SquareFreeFactor {
            factor: f.clone(),
            multiplicity: *m,
            real_roots: chain.count_all(),
        })
        .collect();
    let total = square_free_factors.iter().map(|f| f.multiplicity * f.real_roots).sum();
    Ok(RootReport {
        degree,
        total_with_multiplicity: total,
        distinct_count: intervals.len(),
        square_free_factors,
        isolating_intervals: intervals,
    })
}

/// Distinct real roots of `p` in `(lo, hi)`, or `[lo, hi]` when `closed`.
pub fn count_in_interval(p: &Poly, lo: &Rational, hi: &Rational, closed: bool) -> Result<usize> {
    if lo >= hi {
        return Err(Error::BadInterval);
    }
    let r = radical(p)?;
    if r.degree() == 0 {
        return Ok(0);
    }
    let chain = SturmChain::new(&r);
    let half_open = chain.count_half_open(lo, hi);
    let count = if closed {
        half_open + usize::from(r.eval(lo).is_zero())
    } else {
        half_open - usize::from(r.eval(hi).is_zero())
    };
    Ok(count)
}

/// Real roots counted with multiplicity, after dividing out the known root
/// `root` as often as it divides `p`. Only the cofactor goes through Yun and
/// Sturm, which keeps very high multiplicities cheap.
pub fn count_real_roots_deflating(p: &Poly, root: &Rational) -> Result<RootReport> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let lin = Poly::linear_root(root);
    let mut rest = p.clone();
    let mut mult = 0;
    loop {
        let (q, r) = rest.div_rem(&lin)?;
        if !r.is_zero() {
            break;
        }
        rest = q;
        mult += 1;
    }
    let mut factors = square_free_decompose(&rest)?;
    if mult > 0 {
        factors.insert(0, (lin, mult));
    }
    report_from_factors(p.degree(), factors)
}
