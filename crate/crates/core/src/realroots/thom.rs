use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::poly::UPoly;
use super::roots::{real_roots, AlgNum};
use crate::error::{Error, Result};
use crate::persistence::Label;

/// A real root of `poly` singled out by the signs of `Der(poly)` at it.
///
/// `signs[k]` is the sign of the `k`-th derivative, so `signs[0] == 0`.
/// Equality is structural; use [`ThomEncoding::compare`] for the order of
/// the denoted numbers.
#[derive(Clone, Debug)]
pub struct ThomEncoding {
    poly: UPoly,
    signs: Vec<i8>,
    root: AlgNum,
}

impl PartialEq for ThomEncoding {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly && self.signs == other.signs
    }
}

impl Eq for ThomEncoding {}

/// Encodings of the distinct real roots of `f`, in increasing order.
pub fn thom_encode(f: &UPoly) -> Result<Vec<ThomEncoding>> {
    let ders = f.derivatives();
    Ok(real_roots(f)?
        .into_iter()
        .map(|mut root| {
            let signs = ders.iter().map(|d| root.sign_of(d)).collect();
            ThomEncoding {
                poly: f.clone(),
                signs,
                root,
            }
        })
        .collect())
}

/// Sign of `g` at the number denoted by `x`.
pub fn sign_at(g: &UPoly, x: &ThomEncoding) -> i8 {
    x.sign_of(g)
}

/// Order of the numbers denoted by `a` and `b`.
pub fn compare(a: &ThomEncoding, b: &ThomEncoding) -> Ordering {
    a.compare(b)
}

impl ThomEncoding {
    /// Validates a sign vector against the roots of `poly`.
    pub fn from_parts(poly: UPoly, signs: Vec<i8>) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let ders = poly.derivatives();
        if signs.len() != ders.len() {
            return Err(Error::InvalidThomEncoding(format!(
                "{} signs given for {} derivatives",
                signs.len(),
                ders.len()
            )));
        }
        thom_encode(&poly)?
            .into_iter()
            .find(|e| e.signs == signs)
            .ok_or_else(|| {
                Error::InvalidThomEncoding(format!("no root of {poly} has signs {signs:?}"))
            })
    }

    /// The rational `c`, encoded by `T - c`.
    pub fn rational(c: &BigRational) -> Self {
        ThomEncoding {
            poly: UPoly::linear_root(c),
            signs: vec![0, 1],
            root: AlgNum::rational(c.clone()),
        }
    }

    pub(crate) fn from_root(poly: UPoly, mut root: AlgNum) -> Self {
        let signs = poly.derivatives().iter().map(|d| root.sign_of(d)).collect();
        ThomEncoding { poly, signs, root }
    }

    pub(crate) fn alg(&self) -> AlgNum {
        self.root.clone()
    }

    pub fn poly(&self) -> &UPoly {
        &self.poly
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn sign_of(&self, g: &UPoly) -> i8 {
        self.root.clone().sign_of(g)
    }

    pub fn compare(&self, other: &ThomEncoding) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.root.clone().cmp(&mut other.root.clone())
    }

    pub fn cmp_rational(&self, c: &BigRational) -> Ordering {
        self.root.clone().cmp_rational(c)
    }

    /// The denoted number when it is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if let Some(c) = self.root.as_rational() {
            return Some(c.clone());
        }
        let (lo, hi) = (self.root.interval().lo(), self.root.interval().hi());
        rational_roots(&self.poly.square_free())
            .into_iter()
            .find(|c| c > lo && c < hi)
    }

    /// Decimal approximation.
    pub fn approx(&self) -> f64 {
        self.root.approx()
    }

    pub fn to_json(&self) -> ThomJson {
        ThomJson {
            poly: self.poly.to_string(),
            signs: self.signs.clone(),
        }
    }

    pub fn from_json(j: &ThomJson) -> Result<Self> {
        Self::from_parts(UPoly::parse(&j.poly)?, j.signs.clone())
    }
}

// rational roots via the rational root theorem on an integer multiple
fn rational_roots(f: &UPoly) -> Vec<BigRational> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed, Zero};
    let Some(deg) = f.degree() else {
        return Vec::new();
    };
    let den = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let mut out = Vec::new();
    if low > 0 {
        out.push(BigRational::zero());
    }
    let a0 = ints[low].abs();
    let an = ints[deg].abs();
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let mut d = Vec::new();
        let mut k = BigInt::one();
        while &k * &k <= *n {
            if (n % &k).is_zero() {
                d.push(k.clone());
                d.push(n / &k);
            }
            k += 1;
        }
        d
    };
    // only used for small encodings; bail out on large constants
    if a0.bits() > 40 || an.bits() > 40 {
        return out;
    }
    for p in divisors(&a0) {
        for qd in divisors(&an) {
            for s in [1, -1] {
                let c = BigRational::new(&p * s, qd.clone());
                if f.sign_at(&c) == 0 && !out.contains(&c) {
                    out.push(c);
                }
            }
        }
    }
    out
}

impl Label for ThomEncoding {
    fn label_cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl fmt::Display for ThomEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let signs: Vec<String> = self.signs.iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}, [{}]}}", self.poly, signs.join(","))
    }
}

/// Serialized Thom encoding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThomJson {
    pub poly: String,
    pub signs: Vec<i8>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realroots::poly::q;

    #[test]
    fn cubic_encodings() {
        let f = UPoly::from_i64(&[0, -1, 0, 1]);
        let enc = thom_encode(&f).unwrap();
        let signs: Vec<&[i8]> = enc.iter().map(|e| e.signs()).collect();
        assert_eq!(
            signs,
            vec![&[0, 1, -1, 1][..], &[0, -1, 0, 1], &[0, 1, 1, 1]]
        );
        assert_eq!(compare(&enc[0], &enc[1]), Ordering::Less);
        assert_eq!(compare(&enc[2], &enc[1]), Ordering::Greater);
        assert_eq!(sign_at(&f, &enc[0]), 0);
    }

    #[test]
    fn double_root_encoding() {
        let enc = thom_encode(&UPoly::from_i64(&[-2, 1]).pow(2)).unwrap();
        assert_eq!(enc.len(), 1);
        assert_eq!(enc[0].signs(), &[0, 0, 1]);
    }

    #[test]
    fn sqrt_two_signs() {
        let enc = thom_encode(&UPoly::from_i64(&[-2, 0, 1])).unwrap();
        let root2 = &enc[1];
        assert_eq!(sign_at(&UPoly::var(), root2), 1);
        assert_eq!(sign_at(&UPoly::from_i64(&[-3, 0, 1]), root2), -1);
        assert_eq!(
            compare(root2, &ThomEncoding::rational(&q(1))),
            Ordering::Greater
        );
        assert!(root2.as_rational().is_none());
    }

    #[test]
    fn parts_roundtrip() {
        let enc = thom_encode(&UPoly::from_i64(&[0, -1, 0, 1])).unwrap();
        for e in &enc {
            assert_eq!(&ThomEncoding::from_json(&e.to_json()).unwrap(), e);
        }
        assert!(ThomEncoding::from_parts(UPoly::from_i64(&[1, 0, 1]), vec![0, 1, 1]).is_err());
    }

    #[test]
    fn rational_detection() {
        let enc = thom_encode(&(UPoly::from_i64(&[-1, 2]) * UPoly::from_i64(&[-2, 0, 1]))).unwrap();
        assert_eq!(enc.len(), 3);
        assert_eq!(
            enc[1].as_rational(),
            Some(BigRational::new(1.into(), 2.into()))
        );
    }
}
