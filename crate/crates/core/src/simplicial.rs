//! Abstract simplicial complexes with exact rational homology.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{RationalMatrix, SparseColumns};

/// A simplex as a sorted tuple of vertex ids.
pub type Simplex = Vec<usize>;

/// Finite face-closed simplicial complex on vertices `0..n`.
///
/// Simplices are stored per dimension in lexicographic order of their sorted
/// vertex tuples; that order is the canonical basis of every chain group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    num_vertices: usize,
    by_dim: Vec<Vec<Simplex>>,
    index: HashMap<Simplex, usize>,
}

impl Default for SimplicialComplex {
    fn default() -> Self {
        Self::empty()
    }
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self {
            num_vertices: 0,
            by_dim: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// Builds the face closure of `generators` on `num_vertices` vertices.
    ///
    /// Vertex ids in generators are deduplicated and sorted; every vertex id
    /// `< num_vertices` appears as a 0-simplex even when no generator uses it.
    pub fn from_simplices<I, S>(num_vertices: usize, generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[usize]>,
    {
        let mut all: BTreeSet<Simplex> = (0..num_vertices).map(|v| vec![v]).collect();
        for g in generators {
            let mut s: Simplex = g.as_ref().to_vec();
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                continue;
            }
            if let Some(&v) = s.iter().find(|&&v| v >= num_vertices) {
                return Err(Error::InvalidComplex(format!(
                    "vertex {v} out of range (complex has {num_vertices} vertices)"
                )));
            }
            insert_faces(&mut all, &s);
        }
        Ok(Self::from_closed_set(num_vertices, all))
    }

    fn from_closed_set(num_vertices: usize, all: BTreeSet<Simplex>) -> Self {
        let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
        for s in all {
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            by_dim[d].push(s);
        }
        for layer in &mut by_dim {
            layer.sort();
        }
        let mut index = HashMap::new();
        for layer in &by_dim {
            for (i, s) in layer.iter().enumerate() {
                index.insert(s.clone(), i);
            }
        }
        Self {
            num_vertices,
            by_dim,
            index,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// Dimension of the complex; `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    /// The `p`-simplices in canonical order.
    pub fn simplices(&self, p: usize) -> &[Simplex] {
        self.by_dim.get(p).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, p: usize) -> usize {
        self.simplices(p).len()
    }

    pub fn total_count(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.index.contains_key(s)
    }

    /// Position of `s` in the canonical basis of its dimension.
    pub fn position(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Simplices not properly contained in another simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut covered: BTreeSet<&Simplex> = BTreeSet::new();
        let mut out = Vec::new();
        for layer in self.by_dim.iter().rev() {
            for s in layer {
                if !covered.contains(s) {
                    out.push(s.clone());
                }
            }
            if let Some(d) = layer.first().map(Vec::len) {
                if d >= 2 {
                    for s in layer {
                        for f in facets(s) {
                            if let Some((k, _)) = self.index.get_key_value(&f) {
                                covered.insert(k);
                            }
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Every face of every simplex is present and tuples are sorted and distinct.
    pub fn is_face_closed(&self) -> bool {
        self.iter().all(|s| {
            s.windows(2).all(|w| w[0] < w[1])
                && s.iter().all(|&v| v < self.num_vertices)
                && (s.len() < 2 || facets(s).iter().all(|f| self.contains(f)))
        })
    }

    /// All simplices of dimension at most `l`.
    pub fn skeleton(&self, l: usize) -> SimplicialComplex {
        let by_dim: Vec<Vec<Simplex>> = self.by_dim.iter().take(l + 1).cloned().collect();
        let index = by_dim
            .iter()
            .flat_map(|layer| layer.iter().enumerate().map(|(i, s)| (s.clone(), i)))
            .collect();
        SimplicialComplex {
            num_vertices: self.num_vertices,
            by_dim,
            index,
        }
    }

    /// Induced subcomplex on the given vertex set (vertex ids are kept).
    pub fn full_subcomplex(&self, keep: &BTreeSet<usize>) -> SimplicialComplex {
        let all: BTreeSet<Simplex> = self
            .iter()
            .filter(|s| s.iter().all(|v| keep.contains(v)))
            .cloned()
            .collect();
        let mut sub = Self::from_closed_set(self.num_vertices, all);
        // vertices outside `keep` are not simplices of the subcomplex
        sub.num_vertices = self.num_vertices;
        sub
    }

    /// Subcomplex spanned by an arbitrary face-closed selection of simplices.
    pub fn subcomplex_of<I: IntoIterator<Item = Simplex>>(&self, simplices: I) -> Result<Self> {
        let all: BTreeSet<Simplex> = simplices.into_iter().collect();
        for s in &all {
            if !self.contains(s) {
                return Err(Error::InvalidComplex(format!(
                    "simplex {s:?} is not in the ambient complex"
                )));
            }
            if s.len() >= 2 && facets(s).iter().any(|f| !all.contains(f)) {
                return Err(Error::InvalidComplex(format!(
                    "selection is not face-closed at {s:?}"
                )));
            }
        }
        Ok(Self::from_closed_set(self.num_vertices, all))
    }

    /// Whether every simplex of `self` is a simplex of `other`.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.iter().all(|s| other.contains(s))
    }

    /// First simplex of `self` missing from `other`, if any.
    pub fn first_not_in(&self, other: &SimplicialComplex) -> Option<Simplex> {
        self.iter().find(|s| !other.contains(s)).cloned()
    }

    /// Matrix of the boundary map `C_p -> C_{p-1}` in the canonical bases.
    ///
    /// Column `j` is the boundary of the `j`-th `p`-simplex; the face obtained
    /// by dropping the `i`-th vertex carries sign `(-1)^i`. For `p = 0` the
    /// result is the `0 x n_0` zero map.
    pub fn boundary_matrix(&self, p: usize) -> RationalMatrix {
        let rows = if p == 0 { 0 } else { self.count(p - 1) };
        let mut m = RationalMatrix::zeros(rows, self.count(p));
        if p == 0 {
            return m;
        }
        for (j, s) in self.simplices(p).iter().enumerate() {
            for (i, f) in facets(s).into_iter().enumerate() {
                let r = self.index[&f];
                let v = if i % 2 == 0 {
                    BigRational::one()
                } else {
                    -BigRational::one()
                };
                m.set(r, j, v);
            }
        }
        m
    }

    /// Sparse column form of the boundary map `C_p -> C_{p-1}`.
    pub fn boundary_columns(&self, p: usize) -> SparseColumns {
        let rows = if p == 0 { 0 } else { self.count(p - 1) };
        let mut m = SparseColumns::new(rows);
        for s in self.simplices(p) {
            m.push(self.boundary_column(s));
        }
        m
    }

    pub(crate) fn boundary_column(&self, s: &[usize]) -> BTreeMap<usize, BigInt> {
        let mut col = BTreeMap::new();
        if s.len() >= 2 {
            for (i, f) in facets(s).into_iter().enumerate() {
                let v = if i % 2 == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                };
                col.insert(self.index[&f], v);
            }
        }
        col
    }

    /// Rank of `∂_p` over the rationals.
    pub fn boundary_rank(&self, p: usize) -> usize {
        if p == 0 || self.count(p) == 0 {
            0
        } else {
            self.boundary_columns(p).rank()
        }
    }

    /// Betti numbers `b_0, ..., b_l` over the rationals.
    pub fn betti_numbers(&self, l: usize) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=l + 1).map(|p| self.boundary_rank(p)).collect();
        (0..=l)
            .map(|p| self.count(p) - ranks[p] - ranks[p + 1])
            .collect()
    }

    /// Reduced Betti numbers (only `b_0` differs, and only for nonempty complexes).
    pub fn reduced_betti_numbers(&self, l: usize) -> Vec<usize> {
        let mut b = self.betti_numbers(l);
        if !self.is_empty() {
            b[0] -= 1;
        }
        b
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(d, layer)| {
                if d % 2 == 0 {
                    layer.len() as i64
                } else {
                    -(layer.len() as i64)
                }
            })
            .sum()
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            vertices: self.num_vertices,
            simplices: self.maximal_simplices(),
        }
    }

    pub fn from_json(j: &ComplexJson) -> Result<Self> {
        Self::from_simplices(j.vertices, &j.simplices)
    }
}

/// Serialized complex: vertex count plus maximal simplices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: usize,
    pub simplices: Vec<Vec<usize>>,
}

/// Codimension-one faces in the order "drop vertex 0, drop vertex 1, ...".
pub fn facets(s: &[usize]) -> Vec<Simplex> {
    (0..s.len())
        .map(|i| {
            s.iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

fn insert_faces(all: &mut BTreeSet<Simplex>, s: &[usize]) {
    if all.contains(s) {
        return;
    }
    all.insert(s.to_vec());
    if s.len() >= 2 {
        for f in facets(s) {
            insert_faces(all, &f);
        }
    }
}

/// Nerve of a cover of `n` sets given by an intersection predicate.
///
/// `nonempty(subset)` receives sorted member indices. Candidates of size
/// `d + 2` are all supersets of nonempty `d + 1`-subsets by one index, and
/// every candidate is queried once. A nonempty candidate with an empty
/// (or never reached) face is reported as [`Error::InconsistentPredicate`].
pub fn nerve<F>(n: usize, mut nonempty: F) -> Result<SimplicialComplex>
where
    F: FnMut(&[usize]) -> Result<bool>,
{
    let mut level: Vec<Simplex> = Vec::new();
    for v in 0..n {
        if nonempty(&[v])? {
            level.push(vec![v]);
        }
    }
    let singles: Vec<usize> = level.iter().map(|s| s[0]).collect();
    let mut all: BTreeSet<Simplex> = level.iter().cloned().collect();
    while !level.is_empty() {
        let present: BTreeSet<&Simplex> = level.iter().collect();
        let mut cands: BTreeSet<Simplex> = BTreeSet::new();
        for s in &level {
            for &v in singles.iter().filter(|v| !s.contains(v)) {
                let mut cand = s.clone();
                cand.push(v);
                cand.sort_unstable();
                cands.insert(cand);
            }
        }
        let mut next = Vec::new();
        {
            for cand in cands {
                if nonempty(&cand)? {
                    if let Some(f) = facets(&cand).into_iter().find(|f| !present.contains(f)) {
                        return Err(Error::InconsistentPredicate(format!(
                            "{cand:?} is nonempty but its face {f:?} is not"
                        )));
                    }
                    next.push(cand);
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    Ok(SimplicialComplex::from_closed_set(n, all))
}

/// Reduced homology rank helper used by tests and cone checks.
pub fn is_acyclic(k: &SimplicialComplex) -> bool {
    match k.dimension() {
        None => false,
        Some(d) => k.reduced_betti_numbers(d).iter().all(Zero::is_zero),
    }
}
