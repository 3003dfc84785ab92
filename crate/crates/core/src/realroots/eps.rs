use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::poly::UPoly;
use super::thom::{thom_encode, ThomEncoding};
use crate::error::{Error, Result};

/// Exponent vector of a monomial in `ε_1, ..., ε_n`, ordered graded
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EpsMonomial(pub Vec<u32>);

impl EpsMonomial {
    pub fn one(n: usize) -> Self {
        EpsMonomial(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for EpsMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for EpsMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of `Q[ε_1, ..., ε_n][T]` as `Σ_α ε^α G_α(T)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EpsPolynomial {
    terms: BTreeMap<EpsMonomial, UPoly>,
}

impl EpsPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    /// An ε-free polynomial.
    pub fn from_poly(p: UPoly) -> Self {
        let mut e = Self::zero();
        e.add_term(EpsMonomial(Vec::new()), p);
        e
    }

    /// Adds `ε^α * g`, dropping coefficients that cancel.
    pub fn add_term(&mut self, alpha: EpsMonomial, g: UPoly) {
        // trailing zero exponents do not change the monomial
        let mut a = alpha.0;
        while a.last() == Some(&0) {
            a.pop();
        }
        let key = EpsMonomial(a);
        let sum = match self.terms.remove(&key) {
            Some(old) => &old + &g,
            None => g,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Vec<u32>, UPoly)>) -> Self {
        let mut e = Self::zero();
        for (a, g) in terms {
            e.add_term(EpsMonomial(a), g);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&EpsMonomial, &UPoly)> {
        self.terms.iter()
    }

    /// Whether no ε occurs.
    pub fn is_eps_free(&self) -> bool {
        self.terms.keys().all(|a| a.degree() == 0)
    }
}

/// Sorted Thom encodings of all real roots of the nonconstant coefficients
/// `G_α` of the inputs.
///
/// Between two consecutive outputs (and beyond the extreme ones) no
/// coefficient changes sign, so every open gap lies between two consecutive
/// roots of each input over the field extended by the infinitesimals.
pub fn remove_infinitesimals(gs: &[EpsPolynomial]) -> Result<Vec<ThomEncoding>> {
    if gs.iter().any(EpsPolynomial::is_zero) {
        return Err(Error::ZeroPolynomialInInput);
    }
    let mut h: Vec<UPoly> = Vec::new();
    for g in gs {
        for (_, c) in g.terms() {
            let c = c.monic();
            if !c.is_constant() && !h.contains(&c) {
                h.push(c);
            }
        }
    }
    let prod = h.iter().fold(UPoly::one(), |acc, p| &acc * p);
    thom_encode(&prod)
}
