use super::poly::UPoly;
use crate::error::{Error, Result};

/// Polynomial in `X` whose coefficients are polynomials in `Y`, constant
/// term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    coeffs: Vec<UPoly>,
}

impl BiPoly {
    pub fn from_coeffs(mut coeffs: Vec<UPoly>) -> Self {
        while coeffs.last().is_some_and(UPoly::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// `f(X)` with constant coefficients in `Y`.
    pub fn in_x(f: &UPoly) -> Self {
        Self::from_coeffs(
            f.coeffs()
                .iter()
                .map(|c| UPoly::constant(c.clone()))
                .collect(),
        )
    }

    /// `Y - g(X)`.
    pub fn y_minus(g: &UPoly) -> Self {
        let mut coeffs: Vec<UPoly> = g
            .coeffs()
            .iter()
            .map(|c| UPoly::constant(-c.clone()))
            .collect();
        if coeffs.is_empty() {
            coeffs.push(UPoly::zero());
        }
        coeffs[0] = &coeffs[0] + &UPoly::var();
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[UPoly] {
        &self.coeffs
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// `Res_X(f, g)` as a polynomial in `Y`, from the Sylvester matrix.
pub fn resultant(f: &BiPoly, g: &BiPoly) -> Result<UPoly> {
    let (Some(m), Some(n)) = (f.degree_x(), g.degree_x()) else {
        return Err(Error::ZeroPolynomial);
    };
    let size = m + n;
    if size == 0 {
        return Ok(UPoly::one());
    }
    let mut mat = vec![vec![UPoly::zero(); size]; size];
    for r in 0..n {
        for (k, c) in f.coeffs.iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in g.coeffs.iter().rev().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }
    Ok(determinant(mat))
}

/// Fraction-free (Bareiss) determinant over `Q[Y]`.
fn determinant(mut a: Vec<Vec<UPoly>>) -> UPoly {
    let n = a.len();
    let mut prev = UPoly::one();
    let mut negate = false;
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return UPoly::zero();
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = UPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_factors() {
        // Res_X(X - Y, X - 3) = 3 - Y up to sign
        let f = BiPoly::from_coeffs(vec![-UPoly::var(), UPoly::one()]);
        let g = BiPoly::in_x(&UPoly::from_i64(&[-3, 1]));
        let r = resultant(&f, &g).unwrap();
        assert_eq!(r.monic(), UPoly::from_i64(&[-3, 1]));
    }

    #[test]
    fn square_of_sqrt_two() {
        let r = resultant(
            &BiPoly::in_x(&UPoly::from_i64(&[-2, 0, 1])),
            &BiPoly::y_minus(&UPoly::from_i64(&[0, 0, 1])),
        )
        .unwrap();
        assert_eq!(r.monic(), UPoly::from_i64(&[-2, 1]).pow(2));
    }

    #[test]
    fn identity_map() {
        let r = resultant(
            &BiPoly::in_x(&UPoly::from_i64(&[-2, 0, 1])),
            &BiPoly::y_minus(&UPoly::var()),
        )
        .unwrap();
        assert_eq!(r.monic(), UPoly::from_i64(&[-2, 0, 1]));
    }

    #[test]
    fn zero_input() {
        assert!(resultant(&BiPoly::from_coeffs(vec![]), &BiPoly::in_x(&UPoly::one())).is_err());
    }
}
