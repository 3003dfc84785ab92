use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{q, sign, UPoly};
use crate::error::{Error, Result};

/// Isolating interval of a real root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootInterval {
    /// The root is this rational number.
    Exact(BigRational),
    /// The root lies strictly inside `(lo, hi)`, and is the only root there.
    Open(BigRational, BigRational),
}

impl RootInterval {
    pub fn lo(&self) -> &BigRational {
        match self {
            RootInterval::Exact(c) => c,
            RootInterval::Open(a, _) => a,
        }
    }

    pub fn hi(&self) -> &BigRational {
        match self {
            RootInterval::Exact(c) => c,
            RootInterval::Open(_, b) => b,
        }
    }

    pub fn width(&self) -> BigRational {
        self.hi() - self.lo()
    }
}

/// A root together with its multiplicity in the input polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedRoot {
    pub interval: RootInterval,
    pub multiplicity: usize,
}

/// Bound `B` with every real root in `(-B, B)`.
pub fn cauchy_bound(f: &UPoly) -> BigRational {
    let lc = f.leading().abs();
    let m = f
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigRational::zero);
    BigRational::one() + m / lc
}

/// Number of sign variations of `f` transformed so that roots in `(a, b)`
/// become positive roots; an upper bound on the number of roots in `(a, b)`
/// with the same parity.
fn descartes(f: &UPoly, a: &BigRational, b: &BigRational) -> usize {
    // with a = p/d and b - a = r/d, d^n f((p + r x)/d) has integer coefficients
    let n = match f.degree() {
        Some(n) if n > 0 => n,
        _ => return 0,
    };
    let den = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let d = a.denom().lcm(b.denom());
    let p = (a * BigRational::from_integer(d.clone())).to_integer();
    let r = ((b - a) * BigRational::from_integer(d.clone())).to_integer();
    let mut c: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let mut dp = BigInt::one();
    for k in (0..n).rev() {
        dp *= &d;
        c[k] *= &dp;
    }
    taylor_shift(&mut c, &p);
    let mut rp = BigInt::one();
    for x in c.iter_mut().skip(1) {
        rp *= &r;
        *x *= &rp;
    }
    c.reverse();
    taylor_shift(&mut c, &BigInt::one());
    let signs: Vec<bool> = c
        .iter()
        .filter(|x| !x.is_zero())
        .map(|x| x.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Replaces `c(x)` by `c(x + s)`, coefficients constant term first.
fn taylor_shift(c: &mut [BigInt], s: &BigInt) {
    let n = c.len();
    for i in 0..n.saturating_sub(1) {
        for j in (i..n - 1).rev() {
            let t = &c[j + 1] * s;
            c[j] += t;
        }
    }
}

/// Isolates the real roots of a square-free polynomial in increasing order.
fn isolate_square_free(f: &UPoly) -> Vec<RootInterval> {
    if f.is_constant() {
        return Vec::new();
    }
    let b = cauchy_bound(f);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match descartes(f, &lo, &hi) {
            0 => {}
            1 => out.push(RootInterval::Open(lo, hi)),
            _ => {
                let mid = (&lo + &hi) / q(2);
                if f.sign_at(&mid) == 0 {
                    // step off the root so no interval ends at a root
                    let mut delta = (&hi - &lo) / q(4);
                    while descartes(f, &(&mid - &delta), &(&mid + &delta)) != 1
                        || f.sign_at(&(&mid - &delta)) == 0
                        || f.sign_at(&(&mid + &delta)) == 0
                    {
                        delta /= q(2);
                    }
                    out.push(RootInterval::Exact(mid.clone()));
                    stack.push((&mid + &delta, hi));
                    stack.push((lo, &mid - &delta));
                } else {
                    stack.push((mid.clone(), hi));
                    stack.push((lo, mid));
                }
            }
        }
    }
    out.sort_by(|x, y| x.lo().cmp(y.lo()).then(x.hi().cmp(y.hi())));
    out
}

/// Disjoint isolating intervals of the distinct real roots of `f`, in
/// increasing order, with multiplicities.
pub fn isolate_roots(f: &UPoly) -> Result<Vec<IsolatedRoot>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sf = f.square_free();
    let parts = f.square_free_decomposition();
    Ok(isolate_square_free(&sf)
        .into_iter()
        .map(|interval| {
            let multiplicity = parts
                .iter()
                .position(|a| vanishes_in(a, &interval))
                .map(|k| k + 1)
                .expect("every root belongs to one square-free factor");
            IsolatedRoot {
                interval,
                multiplicity,
            }
        })
        .collect())
}

// `a` square-free, interval isolating for a multiple of `a`
fn vanishes_in(a: &UPoly, iv: &RootInterval) -> bool {
    match iv {
        RootInterval::Exact(c) => a.sign_at(c) == 0,
        RootInterval::Open(lo, hi) => a.sign_at(lo) * a.sign_at(hi) < 0,
    }
}

/// Signed remainder sequence `f, f', -rem(f, f'), ...`.
pub fn sturm_sequence(f: &UPoly) -> Vec<UPoly> {
    let mut seq = vec![f.clone(), f.derivative()];
    while !seq.last().expect("nonempty").is_zero() {
        let n = seq.len();
        let r = -seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(r.sign_normalized());
    }
    seq.retain(|p| !p.is_zero());
    seq
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let s: Vec<i8> = signs.filter(|&s| s != 0).collect();
    s.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `f` (Sturm's theorem).
pub fn sturm_count(f: &UPoly) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let seq = sturm_sequence(f);
    let neg = variations(seq.iter().map(|p| p.sign_at_infinity(false)));
    let pos = variations(seq.iter().map(|p| p.sign_at_infinity(true)));
    Ok(neg - pos)
}

/// Number of distinct roots of `f` in the half-open interval `(a, b]`.
pub fn sturm_count_in(f: &UPoly, a: &BigRational, b: &BigRational) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let seq = sturm_sequence(f);
    let va = variations(seq.iter().map(|p| p.sign_at(a)));
    let vb = variations(seq.iter().map(|p| p.sign_at(b)));
    Ok(va.saturating_sub(vb))
}

/// A real algebraic number: the unique root of a square-free polynomial in
/// an isolating interval.
#[derive(Clone, Debug)]
pub(crate) struct AlgNum {
    poly: UPoly,
    interval: RootInterval,
}

impl AlgNum {
    pub(crate) fn new(square_free: UPoly, interval: RootInterval) -> Self {
        Self {
            poly: square_free,
            interval,
        }
    }

    pub(crate) fn rational(c: BigRational) -> Self {
        Self {
            poly: UPoly::linear_root(&c),
            interval: RootInterval::Exact(c),
        }
    }

    pub(crate) fn interval(&self) -> &RootInterval {
        &self.interval
    }

    pub(crate) fn as_rational(&self) -> Option<&BigRational> {
        match &self.interval {
            RootInterval::Exact(c) => Some(c),
            RootInterval::Open(..) => None,
        }
    }

    /// Halves the isolating interval.
    pub(crate) fn refine(&mut self) {
        if let RootInterval::Open(lo, hi) = &self.interval {
            let mid = (lo + hi) / q(2);
            let s = self.poly.sign_at(&mid);
            self.interval = if s == 0 {
                RootInterval::Exact(mid)
            } else if s == self.poly.sign_at(lo) {
                RootInterval::Open(mid, hi.clone())
            } else {
                RootInterval::Open(lo.clone(), mid)
            };
        }
    }

    pub(crate) fn refine_to(&mut self, width: &BigRational) {
        while &self.interval.width() > width {
            self.refine();
        }
    }

    /// Sign of `g` at this number.
    pub(crate) fn sign_of(&mut self, g: &UPoly) -> i8 {
        if g.is_zero() {
            return 0;
        }
        if let RootInterval::Exact(c) = &self.interval {
            return g.sign_at(c);
        }
        if let RootInterval::Open(lo, hi) = &self.interval {
            if descartes(g, lo, hi) == 0 {
                return g.sign_at(&((lo + hi) / q(2)));
            }
        }
        let h = self.poly.gcd(g);
        if !h.is_constant() && vanishes_in(&h, &self.interval) {
            return 0;
        }
        loop {
            match &self.interval {
                RootInterval::Exact(c) => return g.sign_at(c),
                RootInterval::Open(lo, hi) => {
                    if descartes(g, lo, hi) == 0 {
                        return g.sign_at(&((lo + hi) / q(2)));
                    }
                }
            }
            self.refine();
        }
    }

    pub(crate) fn cmp(&mut self, other: &mut AlgNum) -> Ordering {
        match (self.as_rational().cloned(), other.as_rational().cloned()) {
            (Some(a), Some(b)) => return a.cmp(&b),
            (Some(a), None) => return other.cmp_rational(&a).reverse(),
            (None, Some(b)) => return self.cmp_rational(&b),
            (None, None) => {}
        }
        let h = self.poly.gcd(&other.poly);
        if !h.is_constant() && vanishes_in(&h, &self.interval) && vanishes_in(&h, &other.interval) {
            // both are roots of h; each interval holds exactly one root of h
            let lo = self.interval.lo().max(other.interval.lo()).clone();
            let hi = self.interval.hi().min(other.interval.hi()).clone();
            if lo < hi && sturm_count_in(&h, &lo, &hi).expect("nonzero") > 0 {
                return Ordering::Equal;
            }
        }
        loop {
            if self.interval.hi() <= other.interval.lo() {
                return Ordering::Less;
            }
            if other.interval.hi() <= self.interval.lo() {
                return Ordering::Greater;
            }
            if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
                return a.cmp(b);
            }
            if self.interval.width() >= other.interval.width() {
                self.refine();
            } else {
                other.refine();
            }
            if let Some(a) = self.as_rational().cloned() {
                return other.cmp_rational(&a).reverse();
            }
            if let Some(b) = other.as_rational().cloned() {
                return self.cmp_rational(&b);
            }
        }
    }

    /// Order of this number against a rational.
    pub(crate) fn cmp_rational(&mut self, c: &BigRational) -> Ordering {
        loop {
            match &self.interval {
                RootInterval::Exact(x) => return x.cmp(c),
                RootInterval::Open(lo, hi) => {
                    if hi <= c {
                        return Ordering::Less;
                    }
                    if lo >= c {
                        return Ordering::Greater;
                    }
                    if self.poly.sign_at(c) == 0 {
                        return Ordering::Equal;
                    }
                }
            }
            self.refine();
        }
    }

    /// A rational strictly between `self < other`.
    pub(crate) fn rational_between(&mut self, other: &mut AlgNum) -> BigRational {
        loop {
            let (a, b) = (self.interval.hi().clone(), other.interval.lo().clone());
            if a < b {
                return (a + b) / q(2);
            }
            let self_open = self.as_rational().is_none();
            let other_open = other.as_rational().is_none();
            if a == b && self_open && other_open {
                return a;
            }
            if self_open && (!other_open || self.interval.width() >= other.interval.width()) {
                self.refine();
            } else if other_open {
                other.refine();
            } else {
                panic!("rational_between called on equal numbers");
            }
        }
    }

    /// Midpoint approximation within `2^-52` relative-ish tolerance.
    pub(crate) fn approx(&self) -> f64 {
        let mut a = self.clone();
        a.refine_to(&BigRational::new(1.into(), BigInt::from(1u64 << 20)));
        let (lo, hi) = match &a.interval {
            RootInterval::Exact(c) => return rational_to_f64(c),
            RootInterval::Open(lo, hi) => (rational_to_f64(lo), rational_to_f64(hi)),
        };
        // finish in floating point; stop once the float signs are unreliable
        let coeffs: Vec<f64> = a.poly.coeffs().iter().map(rational_to_f64).collect();
        let eval = |x: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
        let (mut lo, mut hi) = (lo, hi);
        let s_lo = eval(lo).signum();
        for _ in 0..64 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let v = eval(mid);
            if v == 0.0 {
                return mid;
            }
            if v.signum() == s_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

pub(crate) fn rational_to_f64(c: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or_else(|| {
        if sign(c) < 0 {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// The roots of `f` as algebraic numbers, ascending.
pub(crate) fn real_roots(f: &UPoly) -> Result<Vec<AlgNum>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sf = f.square_free();
    Ok(isolate_square_free(&sf)
        .into_iter()
        .map(|iv| AlgNum::new(sf.clone(), iv))
        .collect())
}
