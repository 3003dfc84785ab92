use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Univariate polynomial with exact rational coefficients.
///
/// Coefficients are stored from the constant term upwards with no trailing
/// zeros, so the zero polynomial has an empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<BigRational>,
}

pub(crate) fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl UPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `T`.
    pub fn var() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    /// `c * T^e`.
    pub fn monomial(c: BigRational, e: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); e + 1];
        coeffs[e] = c;
        Self::from_coeffs(coeffs)
    }

    /// `T - c`.
    pub fn linear_root(c: &BigRational) -> Self {
        Self::from_coeffs(vec![-c.clone(), BigRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Integer coefficients, constant term first.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| q(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> BigRational {
        self.coeffs
            .get(e)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &BigRational) -> i8 {
        sign(&self.eval(x))
    }

    /// Sign for `x -> +∞` (`pos`) or `x -> -∞`.
    pub fn sign_at_infinity(&self, pos: bool) -> i8 {
        let s = sign(&self.leading());
        match self.degree() {
            Some(d) if !pos && d % 2 == 1 => -s,
            _ => s,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    /// Divides by the absolute value of the leading coefficient, which keeps
    /// every sign the polynomial takes.
    pub fn sign_normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().abs().recip())
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(e, c)| c * q(e as i64))
                .collect(),
        )
    }

    /// `(f, f', ..., f^{(deg f)})`; empty for the zero polynomial.
    pub fn derivatives(&self) -> Vec<UPoly> {
        let mut out = Vec::new();
        let mut cur = self.clone();
        while !cur.is_zero() {
            let next = cur.derivative();
            out.push(cur);
            cur = next;
        }
        out
    }

    /// Euclidean division. Panics when dividing by zero.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().expect("nonzero");
        let lc = d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (e, dc) in d.coeffs.iter().enumerate() {
                    rem[k + e] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UPoly::from_coeffs(quot), UPoly::from_coeffs(rem))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    /// Exact quotient; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.primitive_rational();
        }
        a.monic()
    }

    // scales to keep coefficient sizes down during remainder sequences
    fn primitive_rational(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = self.coeffs.iter().fold(BigInt::zero(), |acc, c| {
            acc.gcd(&(c.numer() * (&den / c.denom())))
        });
        self.scale(&BigRational::new(den, num))
    }

    /// Square-free part, monic.
    pub fn square_free(&self) -> UPoly {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Square-free decomposition `f = c * a_1 * a_2^2 * ...`; entry `k` is
    /// `a_{k+1}` (monic, possibly constant `1`).
    pub fn square_free_decomposition(&self) -> Vec<UPoly> {
        if self.is_constant() {
            return Vec::new();
        }
        // Yun's algorithm
        let f = self.monic();
        let d = f.derivative();
        let mut a = f.gcd(&d);
        let mut b = f.exact_div(&a).expect("gcd divides");
        let mut c = d.exact_div(&a).expect("gcd divides");
        let mut out = Vec::new();
        loop {
            let db = b.derivative();
            let diff = &c - &db;
            if diff.is_zero() {
                if !b.is_constant() {
                    out.push(b.monic());
                }
                break;
            }
            let ai = b.gcd(&diff);
            out.push(ai.clone());
            b = b.exact_div(&ai).expect("gcd divides");
            c = diff.exact_div(&ai).expect("gcd divides");
            if b.is_constant() {
                break;
            }
        }
        a = a.monic();
        debug_assert!(!a.is_zero());
        while out.last().is_some_and(UPoly::is_constant) {
            out.pop();
        }
        out
    }

    pub fn pow(&self, e: u32) -> UPoly {
        let mut acc = UPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self(a + s * T)`.
    pub fn affine_substitute(&self, a: &BigRational, s: &BigRational) -> UPoly {
        let lin = UPoly::from_coeffs(vec![a.clone(), s.clone()]);
        let mut acc = UPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &UPoly::constant(c.clone());
        }
        acc
    }

    /// `self(g(T))`.
    pub fn compose(&self, g: &UPoly) -> UPoly {
        let mut acc = UPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &UPoly::constant(c.clone());
        }
        acc
    }

    /// `T^deg * self(1/T)`.
    pub fn reversed(&self) -> UPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        UPoly::from_coeffs(c)
    }

    /// Number of sign changes in the coefficient sequence.
    pub fn sign_variations(&self) -> usize {
        let signs: Vec<i8> = self.coeffs.iter().map(sign).filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Enclosure of `{self(x) | lo <= x <= hi}` by interval Horner evaluation.
    pub fn eval_interval(&self, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
        let (mut a, mut b) = (BigRational::zero(), BigRational::zero());
        for c in self.coeffs.iter().rev() {
            let prods = [&a * lo, &a * hi, &b * lo, &b * hi];
            let mn = prods.iter().min().expect("nonempty").clone();
            let mx = prods.iter().max().expect("nonempty").clone();
            a = mn + c;
            b = mx + c;
        }
        (a, b)
    }

    /// Renders in sparse `c*T^e` form with the given variable name.
    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coef = fmt_rational(&a);
            match (e, a.is_one()) {
                (0, _) => out.push_str(&coef),
                (1, true) => out.push_str(var),
                (1, false) => out.push_str(&format!("{coef}*{var}")),
                (_, true) => out.push_str(&format!("{var}^{e}")),
                (_, false) => out.push_str(&format!("{coef}*{var}^{e}")),
            }
        }
        out
    }

    pub fn parse(s: &str) -> Result<UPoly> {
        super::formula::parse_poly(s)
    }
}

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn sign(c: &BigRational) -> i8 {
    if c.is_zero() {
        0
    } else if c.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("T"))
    }
}

impl std::str::FromStr for UPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        UPoly::parse(s)
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::from_coeffs((0..n).map(|e| self.coeff(e) + o.coeff(e)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::from_coeffs((0..n).map(|e| self.coeff(e) - o.coeff(e)).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(c)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for UPoly {
            type Output = UPoly;
            fn $m(self, o: UPoly) -> UPoly {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let f = UPoly::from_i64(&[-1, 0, 1]);
        let g = UPoly::from_i64(&[1, 1]);
        let (quo, r) = f.div_rem(&g);
        assert_eq!(quo, UPoly::from_i64(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(f.gcd(&UPoly::from_i64(&[-1, 1])), UPoly::from_i64(&[-1, 1]));
        assert_eq!(f.derivatives().len(), 3);
        assert_eq!(UPoly::zero().degree(), None);
    }

    #[test]
    fn square_free_parts() {
        let f = UPoly::from_i64(&[-1, 1]).pow(2) * UPoly::from_i64(&[2, 1]);
        assert_eq!(f.square_free(), UPoly::from_i64(&[-2, 1, 1]));
        let dec = f.square_free_decomposition();
        assert_eq!(
            dec,
            vec![UPoly::from_i64(&[2, 1]), UPoly::from_i64(&[-1, 1])]
        );
    }

    #[test]
    fn display_and_parse_roundtrip() {
        let f = UPoly::from_coeffs(vec![
            q(3),
            BigRational::new(1.into(), 2.into()),
            q(0),
            q(-1),
        ]);
        let s = f.to_string();
        assert_eq!(s, "-T^3 + 1/2*T + 3");
        assert_eq!(UPoly::parse(&s).unwrap(), f);
    }

    #[test]
    fn interval_enclosure_contains_values() {
        let f = UPoly::from_i64(&[1, -3, 0, 1]);
        let (lo, hi) = (q(-1), q(2));
        let (a, b) = f.eval_interval(&lo, &hi);
        for k in -4..=8 {
            let x = BigRational::new(k.into(), 4.into());
            let v = f.eval(&x);
            assert!(a <= v && v <= b);
        }
    }
}
