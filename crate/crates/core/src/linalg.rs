//! Exact matrices over the rationals.
//!
//! Ranks are computed with fraction-free (Bareiss) elimination over the
//! integers after clearing denominators row by row; null spaces use plain
//! Gauss-Jordan elimination over `BigRational`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense matrix with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix from small integer entries.
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| BigRational::from_integer(v.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<BigRational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    /// Appends the given columns (each of length `rows`) on the right.
    pub fn hstack_columns(&self, extra: &[Vec<BigRational>]) -> RationalMatrix {
        let cols = self.cols + extra.len();
        let mut out = RationalMatrix::zeros(self.rows, cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for (k, col) in extra.iter().enumerate() {
                assert_eq!(col.len(), self.rows, "column length mismatch");
                out.set(r, self.cols + k, col[r].clone());
            }
        }
        out
    }

    /// Rank over the rationals via Bareiss elimination.
    pub fn rank(&self) -> usize {
        bareiss_rank(self.integer_rows())
    }

    /// A basis of the right null space `{x | A x = 0}`.
    pub fn null_space(&self) -> Vec<Vec<BigRational>> {
        let mut m: Vec<Vec<BigRational>> = (0..self.rows)
            .map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec())
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == m.len() {
                break;
            }
            let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            let inv = m[row][col].recip();
            for v in m[row].iter_mut() {
                *v = &*v * &inv;
            }
            for r in 0..m.len() {
                if r != row && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..self.cols {
                        let delta = &f * &m[row][c];
                        m[r][c] -= delta;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![BigRational::zero(); self.cols];
            v[free] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][free].clone();
            }
            basis.push(v);
        }
        basis
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
            })
            .collect()
    }
}

/// Fraction-free Gaussian elimination on an integer matrix; returns its rank.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in rank + 1..rows {
            let lead = m[r][col].clone();
            for c in col + 1..cols {
                let v = (&pivot * &m[r][c] - &lead * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = pivot.abs();
        if prev.is_zero() {
            prev = BigInt::one();
        }
        rank += 1;
    }
    rank
}

/// Column-sparse integer matrix reduced by fraction-free column operations.
///
/// Each column is a map from row index to a nonzero integer. Reduction walks
/// columns left to right and clears the lowest nonzero entry against earlier
/// pivots, dividing out the content after every step so entries stay small.
#[derive(Clone, Debug, Default)]
pub struct SparseColumns {
    rows: usize,
    cols: Vec<BTreeMap<usize, BigInt>>,
}

impl SparseColumns {
    pub fn new(rows: usize) -> Self {
        Self {
            rows,
            cols: Vec::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn push(&mut self, col: BTreeMap<usize, BigInt>) {
        debug_assert!(col.keys().all(|&r| r < self.rows));
        debug_assert!(col.values().all(|v| !v.is_zero()));
        self.cols.push(col);
    }

    /// Pushes a rational column, scaling it to a primitive integer vector.
    pub fn push_rational(&mut self, col: &[BigRational]) {
        let lcm = col.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let mut out = BTreeMap::new();
        for (r, v) in col.iter().enumerate() {
            if !v.is_zero() {
                out.insert(r, v.numer() * (&lcm / v.denom()));
            }
        }
        make_primitive(&mut out);
        self.push(out);
    }

    pub fn to_dense(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.rows, self.cols.len());
        for (c, col) in self.cols.iter().enumerate() {
            for (&r, v) in col {
                m.set(r, c, BigRational::from_integer(v.clone()));
            }
        }
        m
    }

    /// Reduces the columns in place and returns, per column, the pivot row
    /// of its reduced form (`None` when it reduced to zero).
    pub fn reduce(&mut self) -> Vec<Option<usize>> {
        let mut pivot_of_row: HashMap<usize, usize> = HashMap::new();
        let mut lows = Vec::with_capacity(self.cols.len());
        for c in 0..self.cols.len() {
            let mut col = std::mem::take(&mut self.cols[c]);
            while let Some((&low, lv)) = col.iter().next_back() {
                let Some(&pc) = pivot_of_row.get(&low) else {
                    break;
                };
                let lv = lv.clone();
                let pcol = &self.cols[pc];
                let pv = pcol[&low].clone();
                let g = lv.gcd(&pv);
                let (a, b) = (&pv / &g, &lv / &g);
                // col <- a*col - b*pcol
                for v in col.values_mut() {
                    *v *= &a;
                }
                for (&r, v) in pcol {
                    let e = col.entry(r).or_insert_with(BigInt::zero);
                    *e -= &b * v;
                    if e.is_zero() {
                        col.remove(&r);
                    }
                }
                make_primitive(&mut col);
            }
            let low = col.keys().next_back().copied();
            if let Some(l) = low {
                pivot_of_row.insert(l, c);
            }
            self.cols[c] = col;
            lows.push(low);
        }
        lows
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        self.clone().reduce().iter().filter(|l| l.is_some()).count()
    }
}

fn make_primitive(col: &mut BTreeMap<usize, BigInt>) {
    let g = col.values().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in col.values_mut() {
            *v = &*v / &g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(
            RationalMatrix::from_i64(&[vec![1, 2], vec![2, 4]]).rank(),
            1
        );
        assert_eq!(
            RationalMatrix::from_i64(&[vec![1, 2], vec![3, 4]]).rank(),
            2
        );
        assert_eq!(RationalMatrix::zeros(3, 0).rank(), 0);
        assert_eq!(RationalMatrix::zeros(0, 4).rank(), 0);
        let m = RationalMatrix::from_i64(&[vec![0, 0, 1], vec![0, 2, 0], vec![0, 4, 3]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rational_entries() {
        let half = BigRational::new(1.into(), 2.into());
        let m = RationalMatrix::from_rows(vec![
            vec![half.clone(), BigRational::one()],
            vec![BigRational::one(), BigRational::from_integer(2.into())],
        ]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn null_space_is_annihilated() {
        let m = RationalMatrix::from_i64(&[vec![1, 1, 0, -1], vec![0, 1, 1, 0]]);
        let ns = m.null_space();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in 0..m.rows() {
                let s: BigRational = (0..m.cols()).map(|c| m.get(r, c) * &v[c]).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn sparse_rank_matches_dense() {
        let dense =
            RationalMatrix::from_i64(&[vec![-1, -1, 0, 2], vec![1, 0, -1, 0], vec![0, 1, 1, 3]]);
        let mut sp = SparseColumns::new(3);
        for c in 0..dense.cols() {
            sp.push_rational(&dense.column(c));
        }
        assert_eq!(sp.rank(), dense.rank());
        assert_eq!(sp.to_dense().rank(), 3);
    }
}
