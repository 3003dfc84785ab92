//! Finite filtrations of simplicial complexes, persistent Betti numbers,
//! persistent multiplicities and barcodes.
//!
//! A filtration `K_0 ⊆ ... ⊆ K_N` is stored as its last complex `K_N` plus
//! the entry step of every simplex. Step `-1` denotes the empty complex.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{RationalMatrix, SparseColumns};
use crate::simplicial::{facets, Simplex, SimplicialComplex};

/// Totally ordered filtration labels.
pub trait Label: Clone + fmt::Debug + Send + Sync {
    fn label_cmp(&self, other: &Self) -> Ordering;
}

macro_rules! ord_label {
    ($($t:ty),*) => {$(
        impl Label for $t {
            fn label_cmp(&self, other: &Self) -> Ordering {
                self.cmp(other)
            }
        }
    )*};
}

ord_label!(i64, u64, usize, i32, BigRational);

/// A chain of subcomplexes `K_0 ⊆ ... ⊆ K_N` with strictly increasing labels.
#[derive(Clone, Debug)]
pub struct Filtration<L> {
    labels: Vec<L>,
    complex: SimplicialComplex,
    entry: HashMap<Simplex, usize>,
}

impl<L: Label> Filtration<L> {
    /// Validates nesting and label order.
    pub fn new(complexes: Vec<SimplicialComplex>, labels: Vec<L>) -> Result<Self> {
        if complexes.len() != labels.len() {
            return Err(Error::InvalidFiltration(format!(
                "{} complexes but {} labels",
                complexes.len(),
                labels.len()
            )));
        }
        if complexes.is_empty() {
            return Err(Error::InvalidFiltration(
                "a filtration needs at least one step".into(),
            ));
        }
        check_labels(&labels)?;
        for (i, w) in complexes.windows(2).enumerate() {
            if let Some(s) = w[0].first_not_in(&w[1]) {
                return Err(Error::InvalidFiltration(format!(
                    "simplex {s:?} of step {i} is missing from step {}",
                    i + 1
                )));
            }
        }
        let mut entry = HashMap::new();
        for (i, k) in complexes.iter().enumerate() {
            for s in k.iter() {
                entry.entry(s.clone()).or_insert(i);
            }
        }
        let complex = complexes.into_iter().last().expect("nonempty");
        Ok(Self {
            labels,
            complex,
            entry,
        })
    }

    /// Filtration from the final complex and the entry step of each simplex.
    ///
    /// Every simplex of `complex` must have a step, and faces must not enter
    /// later than their cofaces.
    pub fn from_steps(
        complex: SimplicialComplex,
        steps: HashMap<Simplex, usize>,
        labels: Vec<L>,
    ) -> Result<Self> {
        check_labels(&labels)?;
        if labels.is_empty() {
            return Err(Error::InvalidFiltration(
                "a filtration needs at least one step".into(),
            ));
        }
        for s in complex.iter() {
            let Some(&t) = steps.get(s) else {
                return Err(Error::InvalidFiltration(format!(
                    "simplex {s:?} has no entry step"
                )));
            };
            if t >= labels.len() {
                return Err(Error::IndexOutOfRange(format!("entry step {t} of {s:?}")));
            }
            if s.len() > 1 {
                for f in facets(s) {
                    if steps.get(&f).is_some_and(|&ft| ft > t) {
                        return Err(Error::InvalidFiltration(format!(
                            "face {f:?} enters after {s:?}"
                        )));
                    }
                }
            }
        }
        if let Some(s) = steps.keys().find(|s| !complex.contains(s)) {
            return Err(Error::InvalidFiltration(format!(
                "step given for {s:?}, which is not in the complex"
            )));
        }
        Ok(Self {
            labels,
            complex,
            entry: steps,
        })
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    /// Index of the last step, `N`.
    pub fn last(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The final complex `K_N`.
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn entry_step(&self, s: &[usize]) -> Option<usize> {
        self.entry.get(s).copied()
    }

    /// `K_i`; `-1` gives the empty complex and `N + 1` gives `K_N`.
    pub fn step(&self, i: i64) -> Result<SimplicialComplex> {
        let i = self.clamp_index(i)?;
        Ok(match i {
            None => SimplicialComplex::empty(),
            Some(i) => {
                let keep = self.complex.iter().filter(|s| self.entry[*s] <= i).cloned();
                self.complex
                    .subcomplex_of(keep)
                    .expect("steps are face closed")
            }
        })
    }

    fn clamp_index(&self, i: i64) -> Result<Option<usize>> {
        let n = self.last() as i64;
        if i < -1 || i > n + 1 {
            return Err(Error::IndexOutOfRange(format!(
                "step {i} outside -1..={}",
                n + 1
            )));
        }
        Ok(if i < 0 { None } else { Some(i.min(n) as usize) })
    }

    /// Replaces the labels, keeping the complexes.
    pub fn relabel<M: Label>(&self, labels: Vec<M>) -> Result<Filtration<M>> {
        if labels.len() != self.labels.len() {
            return Err(Error::InvalidFiltration("label count changed".into()));
        }
        check_labels(&labels)?;
        Ok(Filtration {
            labels,
            complex: self.complex.clone(),
            entry: self.entry.clone(),
        })
    }
}

fn check_labels<L: Label>(labels: &[L]) -> Result<()> {
    if let Some(k) = labels
        .windows(2)
        .position(|w| w[0].label_cmp(&w[1]) != Ordering::Less)
    {
        return Err(Error::InvalidFiltration(format!(
            "labels not strictly increasing at step {}",
            k + 1
        )));
    }
    Ok(())
}

/// All persistent Betti numbers `b_p^{i,j}` of one degree.
#[derive(Clone, Debug)]
pub struct PersistentBettiTable {
    n: usize,
    // values[i][j - i] for 0 <= i <= j <= N
    values: Vec<Vec<usize>>,
}

impl PersistentBettiTable {
    pub fn compute<L: Label>(f: &Filtration<L>, p: usize) -> Self {
        let n = f.last();
        let ctx = DegreeContext::new(f, p);
        let values = (0..=n)
            .map(|i| {
                let z = ctx.cycles(i);
                (i..=n).map(|j| ctx.rank_of(&z, j)).collect()
            })
            .collect();
        Self { n, values }
    }

    /// `b^{i,j}` with `K_{-1} = ∅` and `K_{N+1} = K_N`.
    pub fn get(&self, i: i64, j: i64) -> usize {
        if i < 0 {
            return 0;
        }
        let (i, j) = (i as usize, (j as usize).min(self.n));
        let i = i.min(self.n);
        self.values[i][j - i]
    }
}

/// Rank of `H_p(K_i) -> H_p(K_j)` induced by inclusion, over the rationals.
pub fn persistent_betti<L: Label>(f: &Filtration<L>, p: usize, i: i64, j: i64) -> Result<usize> {
    let ci = f.clamp_index(i)?;
    let cj = f.clamp_index(j)?;
    if i > j {
        return Err(Error::IndexOutOfRange(format!(
            "need i <= j, got {i} > {j}"
        )));
    }
    match (ci, cj) {
        (None, _) => Ok(0),
        (Some(_), None) => unreachable!("i <= j"),
        (Some(i), Some(j)) => Ok(DegreeContext::new(f, p).rank(i, j)),
    }
}

/// Precomputed data for one homology degree.
struct DegreeContext<'a, L> {
    f: &'a Filtration<L>,
    p: usize,
}

impl<'a, L: Label> DegreeContext<'a, L> {
    fn new(f: &'a Filtration<L>, p: usize) -> Self {
        Self { f, p }
    }

    /// Basis of `Z_p(K_i)` in the coordinates of the `p`-simplices of `K_N`.
    fn cycles(&self, i: usize) -> Vec<Vec<BigRational>> {
        let k = &self.f.complex;
        let cols: Vec<usize> = (0..k.count(self.p))
            .filter(|&c| self.f.entry[&k.simplices(self.p)[c]] <= i)
            .collect();
        if cols.is_empty() {
            return Vec::new();
        }
        let full = k.boundary_matrix(self.p);
        let mut sub = RationalMatrix::zeros(full.rows(), cols.len());
        for (c, &src) in cols.iter().enumerate() {
            for r in 0..full.rows() {
                sub.set(r, c, full.get(r, src).clone());
            }
        }
        sub.null_space()
            .into_iter()
            .map(|z| {
                let mut v = vec![BigRational::from_integer(0.into()); k.count(self.p)];
                for (c, &src) in cols.iter().enumerate() {
                    v[src] = z[c].clone();
                }
                v
            })
            .collect()
    }

    /// `rank [∂_{p+1}(K_j) | Z_p(K_i)] - rank ∂_{p+1}(K_j)`.
    fn rank(&self, i: usize, j: usize) -> usize {
        self.rank_of(&self.cycles(i), j)
    }

    fn rank_of(&self, z: &[Vec<BigRational>], j: usize) -> usize {
        let k = &self.f.complex;
        if z.is_empty() {
            return 0;
        }
        let mut m = SparseColumns::new(k.count(self.p));
        let mut boundaries = 0;
        for s in k.simplices(self.p + 1) {
            if self.f.entry[s] <= j {
                m.push(k.boundary_column(s));
                boundaries += 1;
            }
        }
        for c in z {
            m.push_rational(c);
        }
        let lows = m.reduce();
        lows[boundaries..].iter().filter(|l| l.is_some()).count()
    }
}

/// Table of persistent multiplicities `μ_p^{i,j}` for `0 <= i < j <= N + 1`.
///
/// Uses `b^{i,N+1} = 0`, so `μ^{i,N+1}` counts classes born at `i` that
/// survive to `K_N`. Diagonal entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplicities {
    n: usize,
    values: BTreeMap<(usize, usize), i64>,
}

impl Multiplicities {
    /// `μ^{i,j}`; zero outside the table.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.values.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Last finite step `N`.
    pub fn last(&self) -> usize {
        self.n
    }

    /// Nonzero entries.
    pub fn nonzero(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.values
            .iter()
            .filter(|(_, &v)| v != 0)
            .map(|(&k, &v)| (k, v))
    }
}

pub fn multiplicities<L: Label>(f: &Filtration<L>, p: usize) -> Multiplicities {
    multiplicities_from_table(&PersistentBettiTable::compute(f, p))
}

fn multiplicities_from_table(t: &PersistentBettiTable) -> Multiplicities {
    let n = t.n;
    let b = |i: i64, j: usize| -> i64 {
        if j > n {
            0
        } else {
            t.get(i, j as i64) as i64
        }
    };
    let mut values = BTreeMap::new();
    for i in 0..=n {
        for j in i + 1..=n + 1 {
            let ii = i as i64;
            let mu = (b(ii, j - 1) - b(ii, j)) - (b(ii - 1, j - 1) - b(ii - 1, j));
            values.insert((i, j), mu);
        }
    }
    Multiplicities { n, values }
}

/// Death of a bar.
#[derive(Clone, Debug)]
pub enum Death<L> {
    Finite(L),
    Infinite,
}

impl<L: Label> Death<L> {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Death::Infinite)
    }

    fn cmp_death(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Death::Finite(a), Death::Finite(b)) => a.label_cmp(b),
            (Death::Finite(_), Death::Infinite) => Ordering::Less,
            (Death::Infinite, Death::Finite(_)) => Ordering::Greater,
            (Death::Infinite, Death::Infinite) => Ordering::Equal,
        }
    }
}

/// A bar `(birth, death, μ)`.
#[derive(Clone, Debug)]
pub struct Bar<L> {
    pub birth: L,
    pub death: Death<L>,
    pub multiplicity: usize,
}

impl<L: Label> Bar<L> {
    fn cmp_bar(&self, other: &Self) -> Ordering {
        self.birth
            .label_cmp(&other.birth)
            .then_with(|| self.death.cmp_death(&other.death))
            .then(self.multiplicity.cmp(&other.multiplicity))
    }
}

/// The barcode of one homology degree, kept sorted by birth then death.
#[derive(Clone, Debug)]
pub struct Barcode<L> {
    pub degree: usize,
    bars: Vec<Bar<L>>,
}

impl<L: Label> Barcode<L> {
    /// Normalizes: merges equal intervals, drops empty bars, sorts.
    pub fn new(degree: usize, bars: Vec<Bar<L>>) -> Self {
        let mut bars: Vec<Bar<L>> = bars.into_iter().filter(|b| b.multiplicity > 0).collect();
        bars.sort_by(|a, b| a.cmp_bar(b));
        let mut merged: Vec<Bar<L>> = Vec::with_capacity(bars.len());
        for b in bars {
            match merged.last_mut() {
                Some(last)
                    if last.birth.label_cmp(&b.birth) == Ordering::Equal
                        && last.death.cmp_death(&b.death) == Ordering::Equal =>
                {
                    last.multiplicity += b.multiplicity
                }
                _ => merged.push(b),
            }
        }
        Self {
            degree,
            bars: merged,
        }
    }

    pub fn bars(&self) -> &[Bar<L>] {
        &self.bars
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    /// Total multiplicity.
    pub fn total(&self) -> usize {
        self.bars.iter().map(|b| b.multiplicity).sum()
    }

    pub fn map_labels<M: Label>(&self, f: impl Fn(&L) -> M) -> Barcode<M> {
        Barcode::new(
            self.degree,
            self.bars
                .iter()
                .map(|b| Bar {
                    birth: f(&b.birth),
                    death: match &b.death {
                        Death::Finite(d) => Death::Finite(f(d)),
                        Death::Infinite => Death::Infinite,
                    },
                    multiplicity: b.multiplicity,
                })
                .collect(),
        )
    }
}

impl<L: Label> PartialEq for Barcode<L> {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.bars.len() == other.bars.len()
            && self
                .bars
                .iter()
                .zip(&other.bars)
                .all(|(a, b)| a.cmp_bar(b) == Ordering::Equal)
    }
}

fn barcode_from_multiplicities<L: Label>(
    f: &Filtration<L>,
    p: usize,
    mu: &Multiplicities,
) -> Barcode<L> {
    let n = mu.last();
    let bars = mu
        .nonzero()
        .map(|((i, j), m)| {
            assert!(m > 0, "negative multiplicity {m} at ({i},{j})");
            Bar {
                birth: f.labels[i].clone(),
                death: if j == n + 1 {
                    Death::Infinite
                } else {
                    Death::Finite(f.labels[j].clone())
                },
                multiplicity: m as usize,
            }
        })
        .collect();
    Barcode::new(p, bars)
}

/// Barcodes `B_0, ..., B_l` from persistent Betti numbers.
pub fn barcode<L: Label>(f: &Filtration<L>, l: usize) -> Vec<Barcode<L>> {
    (0..=l)
        .into_par_iter()
        .map(|p| barcode_from_multiplicities(f, p, &multiplicities(f, p)))
        .collect()
}

/// Barcode of degree `p` by column reduction of a simplex-wise refinement.
///
/// Simplices are inserted by entry step, then dimension, then
/// lexicographically; pairs created within one step are discarded.
pub fn barcode_oracle<L: Label>(f: &Filtration<L>, p: usize) -> Barcode<L> {
    let mut order: Vec<&Simplex> = f.complex.iter().collect();
    order.sort_by(|a, b| {
        f.entry[*a]
            .cmp(&f.entry[*b])
            .then(a.len().cmp(&b.len()))
            .then(a.cmp(b))
    });
    let pos: HashMap<&Simplex, usize> = order.iter().enumerate().map(|(k, s)| (*s, k)).collect();
    let mut m = SparseColumns::new(order.len());
    for s in &order {
        let mut col = BTreeMap::new();
        if s.len() > 1 {
            for (k, face) in facets(s).into_iter().enumerate() {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                col.insert(pos[&face], sign.into());
            }
        }
        m.push(col);
    }
    let lows = m.reduce();
    let mut paired = vec![false; order.len()];
    let mut bars = Vec::new();
    for (c, low) in lows.iter().enumerate() {
        if let Some(r) = *low {
            paired[r] = true;
            paired[c] = true;
            if order[r].len() == p + 1 {
                let (b, d) = (f.entry[order[r]], f.entry[order[c]]);
                if b != d {
                    bars.push(Bar {
                        birth: f.labels[b].clone(),
                        death: Death::Finite(f.labels[d].clone()),
                        multiplicity: 1,
                    });
                }
            }
        }
    }
    for (c, low) in lows.iter().enumerate() {
        if low.is_none() && !paired[c] && order[c].len() == p + 1 {
            bars.push(Bar {
                birth: f.labels[f.entry[order[c]]].clone(),
                death: Death::Infinite,
                multiplicity: 1,
            });
        }
    }
    Barcode::new(p, bars)
}

/// Lower-star filtration of `k` by vertex values.
///
/// Labels are the distinct values in increasing order; a simplex enters at
/// the largest value among its vertices.
pub fn lower_star_filtration<L: Label>(
    k: &SimplicialComplex,
    values: &[L],
) -> Result<Filtration<L>> {
    if values.len() != k.num_vertices() {
        return Err(Error::InvalidFiltration(format!(
            "{} vertex values for {} vertices",
            values.len(),
            k.num_vertices()
        )));
    }
    if k.is_empty() {
        return Err(Error::InvalidFiltration(
            "cannot filter the empty complex".into(),
        ));
    }
    let mut labels: Vec<L> = values.to_vec();
    labels.sort_by(|a, b| a.label_cmp(b));
    labels.dedup_by(|a, b| a.label_cmp(b) == Ordering::Equal);
    let rank_of = |v: &L| {
        labels
            .binary_search_by(|x| x.label_cmp(v))
            .expect("value is a label")
    };
    let vstep: Vec<usize> = values.iter().map(rank_of).collect();
    let steps = k
        .iter()
        .map(|s| {
            (
                s.clone(),
                s.iter().map(|&v| vstep[v]).max().expect("nonempty"),
            )
        })
        .collect();
    Filtration::from_steps(k.clone(), steps, labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(n: usize, gens: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_simplices(n, gens.iter().copied()).unwrap()
    }

    #[test]
    fn two_points_joined() {
        let f = Filtration::new(vec![cx(2, &[]), cx(2, &[&[0, 1]])], vec![0i64, 1]).unwrap();
        assert_eq!(persistent_betti(&f, 0, 0, 0).unwrap(), 2);
        assert_eq!(persistent_betti(&f, 0, 0, 1).unwrap(), 1);
        assert_eq!(persistent_betti(&f, 0, -1, 1).unwrap(), 0);
        assert_eq!(persistent_betti(&f, 0, 1, 2).unwrap(), 1);
        assert!(persistent_betti(&f, 0, 0, 3).is_err());
        let mu = multiplicities(&f, 0);
        assert_eq!(mu.get(0, 1), 1);
        assert_eq!(mu.get(0, 2), 1);
        assert_eq!(mu.get(1, 2), 0);
    }

    #[test]
    fn filled_triangle_kills_loop() {
        let f = Filtration::new(
            vec![cx(3, &[&[0, 1], &[1, 2], &[0, 2]]), cx(3, &[&[0, 1, 2]])],
            vec![0i64, 1],
        )
        .unwrap();
        assert_eq!(multiplicities(&f, 1).get(0, 1), 1);
        let b = barcode(&f, 1);
        assert_eq!(b[1].bars().len(), 1);
        assert!(matches!(b[1].bars()[0].death, Death::Finite(1)));
        assert_eq!(b[1], barcode_oracle(&f, 1));
    }

    #[test]
    fn constant_filtration_has_no_finite_bars() {
        let k = cx(3, &[&[0, 1], &[1, 2]]);
        let f = Filtration::new(vec![k.clone(), k], vec![0i64, 5]).unwrap();
        let mu = multiplicities(&f, 0);
        assert_eq!(mu.get(0, 1), 0);
        assert_eq!(mu.get(0, 2), 1);
    }

    #[test]
    fn empty_then_point() {
        let f =
            Filtration::new(vec![SimplicialComplex::empty(), cx(1, &[])], vec![0i64, 1]).unwrap();
        let b = barcode(&f, 0);
        assert_eq!(b[0].bars().len(), 1);
        assert_eq!(b[0].bars()[0].birth, 1);
        assert!(b[0].bars()[0].death.is_infinite());
        assert_eq!(b[0], barcode_oracle(&f, 0));
    }

    #[test]
    fn invalid_filtrations_rejected() {
        assert!(Filtration::new(vec![cx(2, &[&[0, 1]]), cx(2, &[])], vec![0i64, 1]).is_err());
        assert!(Filtration::new(vec![cx(1, &[]), cx(1, &[])], vec![1i64, 1]).is_err());
    }

    #[test]
    fn lower_star_segment() {
        let f = lower_star_filtration(&cx(2, &[&[0, 1]]), &[0i64, 1]).unwrap();
        assert_eq!(f.step(0).unwrap().total_count(), 1);
        assert_eq!(f.step(1).unwrap().total_count(), 3);
        let c = lower_star_filtration(&cx(2, &[&[0, 1]]), &[4i64, 4]).unwrap();
        assert_eq!(c.len(), 1);
    }
}
