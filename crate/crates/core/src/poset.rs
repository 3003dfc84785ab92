//! Finite posets of index-set paths, their down-closures and order complexes.
//!
//! Elements are tuples `(I_0, ..., I_r, ∅)` of finite sets of interned atoms.
//! For two elements `α`, `β` of the same poset,
//!
//! ```text
//! β ⪯ α  iff  r_α ≤ r_β  and  I^α_j ⊆ I^β_j for 0 ≤ j ≤ r_α
//! ```
//!
//! so longer paths with larger index sets sit lower in the order. The API
//! names both directions explicitly: [`Poset::precedes`] asks `β ⪯ α` with
//! the lower element first, [`Poset::dominates`] asks the same question with
//! the upper element first.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplicial::SimplicialComplex;

/// Interned identifier of an index-set atom.
pub type AtomId = u32;

static NEXT_ORIGIN: AtomicU64 = AtomicU64::new(1);

/// Allocates a fresh construction id.
pub(crate) fn fresh_origin() -> u64 {
    NEXT_ORIGIN.fetch_add(1, Ordering::Relaxed)
}

/// What an atom stands for.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AtomInfo {
    /// Printable name; top-level atoms use their label, derived atoms
    /// `(I, p)` render as `({..},p)`.
    pub name: String,
    /// Recursion level `i` at which the atom indexes a formula.
    pub level: usize,
    /// Cover member id (formula) the atom maps to.
    pub formula: String,
    /// Owning top-level label, used to group pre-covered inputs.
    pub owner: String,
    /// Sorted ids of the top-level atoms this atom descends from.
    pub roots: Vec<AtomId>,
}

/// Atom table shared by every element of one construction.
#[derive(Debug, Default)]
pub struct AtomTable {
    atoms: Vec<AtomInfo>,
}

impl AtomTable {
    pub fn new(atoms: Vec<AtomInfo>) -> Self {
        Self { atoms }
    }

    pub fn get(&self, id: AtomId) -> &AtomInfo {
        &self.atoms[id as usize]
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn name(&self, id: AtomId) -> &str {
        &self.atoms[id as usize].name
    }

    pub fn find(&self, name: &str) -> Option<AtomId> {
        self.atoms
            .iter()
            .position(|a| a.name == name)
            .map(|i| i as AtomId)
    }
}

/// One element `(I_0, ..., I_r, ∅)`; each `I_j` is a sorted set of atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PosetElement {
    origin: u64,
    path: Vec<Vec<AtomId>>,
}

impl PosetElement {
    pub(crate) fn new(origin: u64, path: Vec<Vec<AtomId>>) -> Self {
        debug_assert!(path.iter().all(|s| s.windows(2).all(|w| w[0] < w[1])));
        Self { origin, path }
    }

    pub fn path(&self) -> &[Vec<AtomId>] {
        &self.path
    }

    /// `r`, the index of the last (singleton) set.
    pub fn depth(&self) -> usize {
        self.path.len() - 1
    }

    pub fn origin(&self) -> u64 {
        self.origin
    }

    /// `β ⪯ α` for `self = β`, without checking the origin.
    fn below_unchecked(&self, alpha: &PosetElement) -> bool {
        alpha.path.len() <= self.path.len()
            && alpha
                .path
                .iter()
                .zip(&self.path)
                .all(|(a, b)| is_subset(a, b))
    }

    pub fn weight(&self) -> usize {
        self.path.iter().map(Vec::len).sum()
    }
}

fn is_subset(small: &[AtomId], big: &[AtomId]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.by_ref().any(|y| y == x))
}

/// Finite poset of paths with the order described in the module docs.
#[derive(Clone, Debug)]
pub struct Poset {
    origin: u64,
    atoms: Arc<AtomTable>,
    elements: Vec<PosetElement>,
    index: HashMap<Vec<Vec<AtomId>>, usize>,
    chain_bound: Option<usize>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.origin == other.origin && self.elements == other.elements
    }
}

impl Poset {
    /// Builds a poset from element paths, sorting them lexicographically by
    /// atom names. `chain_bound` caps the dimension of any chain; exceeding
    /// it during chain enumeration is treated as a construction bug.
    pub fn from_paths(
        origin: u64,
        atoms: Arc<AtomTable>,
        paths: impl IntoIterator<Item = Vec<Vec<AtomId>>>,
        chain_bound: Option<usize>,
    ) -> Self {
        let mut uniq: BTreeSet<Vec<Vec<AtomId>>> = BTreeSet::new();
        for mut p in paths {
            for s in &mut p {
                s.sort_unstable();
                s.dedup();
            }
            uniq.insert(p);
        }
        let mut keyed: Vec<(Vec<Vec<String>>, Vec<Vec<AtomId>>)> = uniq
            .into_iter()
            .map(|p| {
                let names = p
                    .iter()
                    .map(|s| s.iter().map(|&a| atoms.name(a).to_string()).collect())
                    .collect();
                (names, p)
            })
            .collect();
        keyed.sort();
        let elements: Vec<PosetElement> = keyed
            .into_iter()
            .map(|(_, p)| PosetElement::new(origin, p))
            .collect();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.path.clone(), i))
            .collect();
        Self {
            origin,
            atoms,
            elements,
            index,
            chain_bound,
        }
    }

    pub fn origin(&self) -> u64 {
        self.origin
    }

    pub fn atoms(&self) -> &Arc<AtomTable> {
        &self.atoms
    }

    pub fn elements(&self) -> &[PosetElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn chain_bound(&self) -> Option<usize> {
        self.chain_bound
    }

    pub fn contains(&self, e: &PosetElement) -> bool {
        e.origin == self.origin && self.index.contains_key(&e.path)
    }

    pub fn position(&self, e: &PosetElement) -> Option<usize> {
        if e.origin != self.origin {
            return None;
        }
        self.index.get(&e.path).copied()
    }

    /// Looks an element up by the atom names of its path.
    pub fn element_by_names(&self, names: &[&[&str]]) -> Option<&PosetElement> {
        let path: Option<Vec<Vec<AtomId>>> = names
            .iter()
            .map(|set| {
                let mut ids: Option<Vec<AtomId>> = set.iter().map(|n| self.atoms.find(n)).collect();
                if let Some(v) = ids.as_mut() {
                    v.sort_unstable();
                }
                ids
            })
            .collect();
        path.and_then(|p| self.index.get(&p))
            .map(|&i| &self.elements[i])
    }

    fn check_origin(&self, e: &PosetElement) -> Result<()> {
        if e.origin != self.origin {
            Err(Error::MixedPoset)
        } else {
            Ok(())
        }
    }

    /// `lower ⪯ upper`.
    pub fn precedes(&self, lower: &PosetElement, upper: &PosetElement) -> Result<bool> {
        self.check_origin(lower)?;
        self.check_origin(upper)?;
        Ok(lower.below_unchecked(upper))
    }

    /// `lower ⪯ upper`, with the upper element first: `dominates(a, b)` is
    /// true iff `b ⪯ a`.
    pub fn dominates(&self, upper: &PosetElement, lower: &PosetElement) -> Result<bool> {
        self.precedes(lower, upper)
    }

    pub fn is_maximal(&self, e: &PosetElement) -> bool {
        !self.elements.iter().any(|o| o != e && e.below_unchecked(o))
    }

    pub fn maximal_elements(&self) -> Vec<PosetElement> {
        self.elements
            .iter()
            .filter(|e| self.is_maximal(e))
            .cloned()
            .collect()
    }

    /// Induced subposet on the elements satisfying `keep`.
    pub fn restrict(&self, keep: impl Fn(&PosetElement) -> bool) -> Poset {
        let paths: Vec<_> = self
            .elements
            .iter()
            .filter(|e| keep(e))
            .map(|e| e.path.clone())
            .collect();
        Poset::from_paths(self.origin, self.atoms.clone(), paths, self.chain_bound)
    }

    /// `{β ∈ P | β ⪯ α for some α ∈ A}` with the induced order.
    pub fn down_closure<'a>(&self, a: impl IntoIterator<Item = &'a PosetElement>) -> Result<Poset> {
        let tops: Vec<&PosetElement> = a.into_iter().collect();
        for t in &tops {
            self.check_origin(t)?;
            if !self.contains(t) {
                return Err(Error::ElementNotInPoset(self.display(t)));
            }
        }
        Ok(self.restrict(|b| tops.iter().any(|t| b.below_unchecked(t))))
    }

    /// For each element, the indices of elements strictly above it.
    fn strictly_above(&self) -> Vec<Vec<usize>> {
        let n = self.elements.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != i && self.elements[i].below_unchecked(&self.elements[j]))
                    .collect()
            })
            .collect()
    }

    /// Cover relations `(lower, upper)` as element indices.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let above = self.strictly_above();
        let mut edges = Vec::new();
        for (i, ups) in above.iter().enumerate() {
            for &j in ups {
                let between = ups.iter().any(|&k| k != j && above[k].contains(&j));
                if !between {
                    edges.push((i, j));
                }
            }
        }
        edges.sort_unstable();
        edges
    }

    /// Order complex `Δ(P)`: vertex `i` is the `i`-th element, simplices are chains.
    pub fn order_complex(&self) -> SimplicialComplex {
        self.order_complex_up_to(None)
    }

    /// Order complex truncated to chains of dimension at most `max_dim`.
    pub fn order_complex_up_to(&self, max_dim: Option<usize>) -> SimplicialComplex {
        let above = self.strictly_above();
        let mut chains: Vec<Vec<usize>> = Vec::new();
        let mut stack = Vec::new();
        // without truncation every maximal chain starts at a minimal element
        let has_below: Vec<bool> = {
            let mut v = vec![false; self.elements.len()];
            for ups in &above {
                for &u in ups {
                    v[u] = true;
                }
            }
            v
        };
        let starts = (0..self.elements.len()).filter(|&i| max_dim.is_some() || !has_below[i]);
        for start in starts {
            stack.push(start);
            self.extend_chains(&above, &mut stack, &mut chains, max_dim);
            stack.pop();
        }
        SimplicialComplex::from_simplices(self.elements.len(), chains)
            .expect("chains use valid element indices")
    }

    fn extend_chains(
        &self,
        above: &[Vec<usize>],
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        max_dim: Option<usize>,
    ) {
        let dim = stack.len() - 1;
        if let Some(bound) = self.chain_bound {
            assert!(
                dim <= bound,
                "chain of dimension {dim} exceeds the bound {bound}"
            );
        }
        let top = *stack.last().expect("nonempty chain");
        let can_grow = max_dim.is_none_or(|m| dim < m);
        let ups = &above[top];
        if ups.is_empty() || !can_grow {
            let mut s = stack.clone();
            s.sort_unstable();
            out.push(s);
            return;
        }
        for &u in ups {
            stack.push(u);
            self.extend_chains(above, stack, out, max_dim);
            stack.pop();
        }
    }

    /// Human-readable form `({a,b},{x},∅)`.
    pub fn display(&self, e: &PosetElement) -> String {
        let mut s = String::from("(");
        for set in &e.path {
            s.push('{');
            s.push_str(
                &set.iter()
                    .map(|&a| self.atoms.name(a))
                    .collect::<Vec<_>>()
                    .join(","),
            );
            s.push_str("},");
        }
        s.push_str("∅)");
        s
    }

    pub fn to_json(&self) -> PosetJson {
        let elements = self
            .elements
            .iter()
            .map(|e| {
                let mut p: Vec<Vec<String>> = e
                    .path
                    .iter()
                    .map(|s| s.iter().map(|&a| self.atoms.name(a).to_string()).collect())
                    .collect();
                p.push(vec!["∅".to_string()]);
                p
            })
            .collect();
        PosetJson {
            elements,
            hasse: self
                .hasse_edges()
                .into_iter()
                .map(|(a, b)| [a, b])
                .collect(),
        }
    }
}

/// Serialized poset: element paths (terminated by `["∅"]`) in canonical order
/// and Hasse edges `[lower_index, upper_index]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<Vec<Vec<String>>>,
    pub hasse: Vec<[usize; 2]>,
}

impl fmt::Display for PosetJson {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.elements.iter().enumerate() {
            let parts: Vec<String> = e.iter().map(|s| format!("{{{}}}", s.join(","))).collect();
            writeln!(f, "{i}: ({})", parts.join(","))?;
        }
        Ok(())
    }
}
