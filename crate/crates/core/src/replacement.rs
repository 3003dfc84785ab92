//! Recursive construction of the poset `P_{m,i}(Φ)` over a cover oracle and
//! the simplicial replacement `Δ(P_{ℓ+1,0}(Φ))` with its family of
//! subcomplexes indexed by subsets of the input labels.
//!
//! For a tuple `Φ` indexed by `J`, the construction keeps the singletons
//! `({j}, ∅)` and, for each `I ⊆ J` with `2 ≤ |I| ≤ m + 2`, collects the index
//! set `J_I`: the cover members `(I', p)` of `⋀_{j ∈ I'} Φ(j)` over all
//! `I ⊆ I' ⊆ J` with `|I'| ≤ m + 2`. It then recurses on `J_I` with parameters
//! `(m - |I| + 1, i + 1)` and prepends `I` to every element returned.
//!
//! Atoms `(I', p)` are interned once per construction, so the same member of
//! the same conjunction is literally the same atom in every branch.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::covers::{CoverOracle, FormulaKey};
use crate::error::{Error, Result};
use crate::poset::{fresh_origin, AtomId, AtomInfo, AtomTable, Poset};
use crate::simplicial::SimplicialComplex;

/// Default cap on the work (elements produced plus oracle queries) of one construction.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// One entry of a tuple of formulas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleEntry {
    /// Index label `j`.
    pub label: String,
    /// Formula id `Φ(j)` as understood by the oracle.
    pub formula: String,
    /// Input set this entry belongs to (the label itself unless pre-covered).
    pub owner: String,
}

/// A tuple `Φ ∈ F^J`: labels with their formula ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TupleOfFormulas {
    entries: Vec<TupleEntry>,
}

impl TupleOfFormulas {
    /// Tuple whose formula ids are given explicitly.
    pub fn new<I, L, F>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (L, F)>,
        L: Into<String>,
        F: Into<String>,
    {
        let entries = entries
            .into_iter()
            .map(|(l, f)| {
                let label = l.into();
                TupleEntry {
                    owner: label.clone(),
                    label,
                    formula: f.into(),
                }
            })
            .collect();
        Self::from_entries(entries)
    }

    /// Tuple where each label is its own formula id.
    pub fn identity<I, L>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = L>,
        L: Into<String>,
    {
        Self::new(labels.into_iter().map(|l| {
            let l = l.into();
            (l.clone(), l)
        }))
    }

    /// Splits every labelled input set into the members of its cover, as the
    /// first step of a replacement does for inputs that are not themselves
    /// connected enough. Entry labels are `label#p`; owners keep the label.
    pub fn covered<I, L>(labels: I, oracle: &dyn CoverOracle) -> Result<Self>
    where
        I: IntoIterator<Item = L>,
        L: Into<String>,
    {
        let mut entries = Vec::new();
        for l in labels {
            let l = l.into();
            for (p, member) in oracle
                .cover(0, &FormulaKey::new([l.clone()]))?
                .into_iter()
                .enumerate()
            {
                entries.push(TupleEntry {
                    label: format!("{l}#{p}"),
                    formula: member,
                    owner: l.clone(),
                });
            }
        }
        Self::from_entries(entries)
    }

    pub fn from_entries(mut entries: Vec<TupleEntry>) -> Result<Self> {
        entries.sort_by(|a, b| a.label.cmp(&b.label));
        if let Some(w) = entries.windows(2).find(|w| w[0].label == w[1].label) {
            return Err(Error::InvalidInput(format!(
                "duplicate label `{}`",
                w[0].label
            )));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[TupleEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Φ|_{J'}` for a set of entry labels.
    pub fn restrict(&self, labels: &BTreeSet<String>) -> Result<Self> {
        for l in labels {
            if !self.entries.iter().any(|e| &e.label == l) {
                return Err(Error::UnknownLabel(l.clone()));
            }
        }
        Ok(Self {
            entries: self
                .entries
                .iter()
                .filter(|e| labels.contains(&e.label))
                .cloned()
                .collect(),
        })
    }
}

/// Knobs for one construction.
#[derive(Clone, Debug)]
pub struct BuildOptions {
    /// Cap on the total number of poset elements produced plus cover queries
    /// issued.
    pub budget: usize,
    /// Recurse over distinct index subsets in parallel.
    pub parallel: bool,
    /// Truncate the order complex to this dimension (`None` keeps all chains).
    pub max_complex_dim: Option<usize>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            parallel: true,
            max_complex_dim: None,
        }
    }
}

type Path = Vec<Vec<AtomId>>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum AtomKey {
    Top(String),
    Derived { parent: Vec<AtomId>, p: usize },
}

#[derive(Default)]
struct Interner {
    ids: HashMap<AtomKey, AtomId>,
    atoms: Vec<AtomInfo>,
}

impl Interner {
    fn intern(&mut self, key: AtomKey, info: impl FnOnce(&[AtomInfo]) -> AtomInfo) -> AtomId {
        if let Some(&id) = self.ids.get(&key) {
            return id;
        }
        let id = self.atoms.len() as AtomId;
        let a = info(&self.atoms);
        self.atoms.push(a);
        self.ids.insert(key, id);
        id
    }
}

struct Builder<'a> {
    oracle: &'a dyn CoverOracle,
    interner: Mutex<Interner>,
    memo: Mutex<HashMap<(i64, usize, Vec<AtomId>), Arc<Vec<Path>>>>,
    produced: AtomicUsize,
    opts: &'a BuildOptions,
}

impl<'a> Builder<'a> {
    fn formula_key(&self, set: &[AtomId]) -> FormulaKey {
        let int = self.interner.lock().expect("interner lock poisoned");
        FormulaKey::new(set.iter().map(|&a| int.atoms[a as usize].formula.clone()))
    }

    /// Members `(I, p)` of the cover of `⋀_{j ∈ I} Φ(j)` as interned atoms.
    fn own_members(&self, set: &[AtomId], level: usize) -> Result<Vec<AtomId>> {
        let key = self.formula_key(set);
        let members = self.oracle.cover(level, &key)?;
        let mut int = self.interner.lock().expect("interner lock poisoned");
        let ids = members
            .into_iter()
            .enumerate()
            .map(|(p, formula)| {
                int.intern(
                    AtomKey::Derived {
                        parent: set.to_vec(),
                        p,
                    },
                    |atoms| {
                        let inner: Vec<&str> = set
                            .iter()
                            .map(|&a| atoms[a as usize].name.as_str())
                            .collect();
                        let mut roots: BTreeSet<AtomId> = BTreeSet::new();
                        for &a in set {
                            roots.extend(atoms[a as usize].roots.iter().copied());
                        }
                        AtomInfo {
                            name: format!("({{{}}},{p})", inner.join(",")),
                            level: level + 1,
                            formula,
                            owner: String::new(),
                            roots: roots.into_iter().collect(),
                        }
                    },
                )
            })
            .collect();
        Ok(ids)
    }

    fn charge(&self, n: usize) -> Result<()> {
        let total = self.produced.fetch_add(n, Ordering::Relaxed) + n;
        if total > self.opts.budget || n > self.opts.budget {
            Err(Error::RecursionBudgetExceeded(self.opts.budget))
        } else {
            Ok(())
        }
    }

    /// `J_I` for every `I ⊆ J` with `2 ≤ |I| ≤ m + 2` that has a nonempty one.
    ///
    /// Oracle queries go by increasing `|I|`; a subset is only queried when
    /// all of its subsets of size at least two have nonempty covers, since a
    /// conjunction with more terms realizes a subset of every sub-conjunction.
    fn index_sets(
        &self,
        m: i64,
        level: usize,
        j: &[AtomId],
    ) -> Result<BTreeMap<Vec<AtomId>, BTreeSet<AtomId>>> {
        let max_card = (m + 2) as usize;
        let mut own: BTreeMap<Vec<AtomId>, Vec<AtomId>> = BTreeMap::new();
        let mut layer: Vec<Vec<AtomId>> = Vec::new();
        if max_card >= 2 {
            for a in 0..j.len() {
                for b in a + 1..j.len() {
                    layer.push(vec![j[a], j[b]]);
                }
            }
        }
        let mut card = 2;
        while !layer.is_empty() && card <= max_card {
            self.charge(layer.len())?;
            let results: Vec<Result<Vec<AtomId>>> = if self.opts.parallel {
                layer
                    .par_iter()
                    .map(|s| self.own_members(s, level))
                    .collect()
            } else {
                layer.iter().map(|s| self.own_members(s, level)).collect()
            };
            let mut nonempty = Vec::new();
            for (s, r) in layer.into_iter().zip(results) {
                let ids = r?;
                if !ids.is_empty() {
                    nonempty.push(s.clone());
                    own.insert(s, ids);
                }
            }
            card += 1;
            if card > max_card {
                break;
            }
            let present: BTreeSet<&Vec<AtomId>> = nonempty.iter().collect();
            let mut next = Vec::new();
            for s in &nonempty {
                let last = *s.last().expect("nonempty subset");
                for &x in j.iter().filter(|&&x| x > last) {
                    let mut cand = s.clone();
                    cand.push(x);
                    let all_faces = (0..cand.len()).all(|drop| {
                        let face: Vec<AtomId> = cand
                            .iter()
                            .enumerate()
                            .filter(|&(k, _)| k != drop)
                            .map(|(_, &v)| v)
                            .collect();
                        present.contains(&face)
                    });
                    if all_faces {
                        next.push(cand);
                    }
                }
            }
            layer = next;
        }

        // downward induction on |I|: J_I = own(I) ∪ ⋃_{x ∉ I} J_{I ∪ {x}}
        let mut by_card: BTreeMap<usize, Vec<Vec<AtomId>>> = BTreeMap::new();
        for s in own.keys() {
            by_card.entry(s.len()).or_default().push(s.clone());
        }
        let mut sets: BTreeMap<Vec<AtomId>, BTreeSet<AtomId>> = BTreeMap::new();
        for c in (2..=max_card.min(j.len())).rev() {
            // candidates of size c: those with own members, plus those below a larger nonempty J
            let mut cands: BTreeSet<Vec<AtomId>> = by_card
                .get(&c)
                .cloned()
                .unwrap_or_default()
                .into_iter()
                .collect();
            for big in sets.keys().filter(|s| s.len() == c + 1) {
                for drop in 0..big.len() {
                    let face: Vec<AtomId> = big
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| k != drop)
                        .map(|(_, &v)| v)
                        .collect();
                    cands.insert(face);
                }
            }
            for s in cands {
                let mut acc: BTreeSet<AtomId> = own
                    .get(&s)
                    .map(|v| v.iter().copied().collect())
                    .unwrap_or_default();
                for &x in j.iter().filter(|x| !s.contains(x)) {
                    let mut sup = s.clone();
                    sup.push(x);
                    sup.sort_unstable();
                    if let Some(js) = sets.get(&sup) {
                        acc.extend(js.iter().copied());
                    }
                }
                if !acc.is_empty() {
                    sets.insert(s, acc);
                }
            }
        }
        Ok(sets)
    }

    fn poset(&self, m: i64, level: usize, j: &[AtomId]) -> Result<Arc<Vec<Path>>> {
        if j.is_empty() {
            return Ok(Arc::new(Vec::new()));
        }
        let memo_key = (m, level, j.to_vec());
        if let Some(hit) = self.memo.lock().expect("memo lock poisoned").get(&memo_key) {
            return Ok(hit.clone());
        }
        let mut out: Vec<Path> = j.iter().map(|&a| vec![vec![a]]).collect();
        if m >= 0 {
            let sets = self.index_sets(m, level, j)?;
            let work: Vec<(&Vec<AtomId>, Vec<AtomId>)> = sets
                .iter()
                .map(|(i_set, js)| (i_set, js.iter().copied().collect()))
                .collect();
            let recurse = |(i_set, js): &(&Vec<AtomId>, Vec<AtomId>)| -> Result<Vec<Path>> {
                let sub_m = m - i_set.len() as i64 + 1;
                let sub = self.poset(sub_m, level + 1, js)?;
                Ok(sub
                    .iter()
                    .map(|p| {
                        let mut path = Vec::with_capacity(p.len() + 1);
                        path.push((*i_set).clone());
                        path.extend(p.iter().cloned());
                        path
                    })
                    .collect())
            };
            let parts: Vec<Result<Vec<Path>>> = if self.opts.parallel {
                work.par_iter().map(recurse).collect()
            } else {
                work.iter().map(recurse).collect()
            };
            for part in parts {
                out.extend(part?);
            }
        }
        self.charge(out.len())?;
        let out = Arc::new(out);
        self.memo
            .lock()
            .expect("memo lock poisoned")
            .insert(memo_key, out.clone());
        Ok(out)
    }
}

/// Builds `P_{m,i}(Φ)`.
///
/// `m = -1` gives the antichain of singletons. Errors from the oracle are
/// propagated; [`Error::RecursionBudgetExceeded`] is raised once the total
/// number of elements produced and oracle queries issued exceeds `opts.budget`.
pub fn build_poset(
    phi: &TupleOfFormulas,
    m: i64,
    i: usize,
    oracle: &dyn CoverOracle,
    opts: &BuildOptions,
) -> Result<Poset> {
    if m < -1 {
        return Err(Error::InvalidInput(format!(
            "m must be at least -1, got {m}"
        )));
    }
    let builder = Builder {
        oracle,
        interner: Mutex::new(Interner::default()),
        memo: Mutex::new(HashMap::new()),
        produced: AtomicUsize::new(0),
        opts,
    };
    let top: Vec<AtomId> = {
        let mut int = builder.interner.lock().expect("interner lock poisoned");
        phi.entries()
            .iter()
            .map(|e| {
                int.intern(AtomKey::Top(e.label.clone()), |atoms| AtomInfo {
                    name: e.label.clone(),
                    level: i,
                    formula: e.formula.clone(),
                    owner: e.owner.clone(),
                    roots: vec![atoms.len() as AtomId],
                })
            })
            .collect()
    };
    let paths = builder.poset(m, i, &top)?;
    let table = builder
        .interner
        .into_inner()
        .expect("interner lock poisoned")
        .atoms;
    let bound = (2 * m + 2).max(0) as usize;
    Ok(Poset::from_paths(
        fresh_origin(),
        Arc::new(AtomTable::new(table)),
        paths.iter().cloned(),
        Some(bound),
    ))
}

/// Image of `P_{m,i}(Φ|_{J'})` inside `P = P_{m,i}(Φ)`.
///
/// An element belongs to the image iff every atom on its path descends only
/// from top-level labels in `J'`; in particular `I_0 ⊆ J'`.
pub fn sub_poset(p: &Poset, labels: &BTreeSet<String>) -> Result<Poset> {
    let atoms = p.atoms();
    let top: BTreeMap<&str, AtomId> = (0..atoms.len() as AtomId)
        .filter(|&a| atoms.get(a).roots == [a])
        .map(|a| (atoms.name(a), a))
        .collect();
    let mut allowed = BTreeSet::new();
    for l in labels {
        match top.get(l.as_str()) {
            Some(&a) => {
                allowed.insert(a);
            }
            None if atoms.is_empty() => {}
            None => return Err(Error::UnknownLabel(l.clone())),
        }
    }
    Ok(p.restrict(|e| {
        e.path()
            .iter()
            .flatten()
            .all(|&a| atoms.get(a).roots.iter().all(|r| allowed.contains(r)))
    }))
}

/// Output of [`simplicial_replacement`].
#[derive(Clone, Debug)]
pub struct ReplacementResult {
    pub poset: Poset,
    /// `Δ(P)`, vertex `v` being the `v`-th poset element.
    pub complex: SimplicialComplex,
    pub ell: usize,
}

impl ReplacementResult {
    /// `Δ(P(Φ|_{J'}))` as a subcomplex of [`Self::complex`], where `J'` is the
    /// set of tuple entries owned by the given input labels.
    pub fn sub_complex(&self, owners: &BTreeSet<String>) -> Result<SimplicialComplex> {
        let labels = self.entry_labels_for(owners)?;
        let sub = sub_poset(&self.poset, &labels)?;
        let keep: BTreeSet<usize> = sub
            .elements()
            .iter()
            .map(|e| {
                self.poset
                    .position(e)
                    .expect("subposet element lies in the poset")
            })
            .collect();
        Ok(self.complex.full_subcomplex(&keep))
    }

    /// Entry labels owned by the given input labels.
    pub fn entry_labels_for(&self, owners: &BTreeSet<String>) -> Result<BTreeSet<String>> {
        let atoms = self.poset.atoms();
        let tops: Vec<&AtomInfo> = (0..atoms.len() as AtomId)
            .filter(|&a| atoms.get(a).roots == [a])
            .map(|a| atoms.get(a))
            .collect();
        for o in owners {
            if !tops.iter().any(|t| &t.owner == o) {
                return Err(Error::UnknownLabel(o.clone()));
            }
        }
        Ok(tops
            .iter()
            .filter(|t| owners.contains(&t.owner))
            .map(|t| t.name.clone())
            .collect())
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.complex.betti_numbers(self.ell)
    }
}

/// Simplicial replacement: `Δ(P_{ℓ+1,0}(Φ))` plus its subcomplex family.
pub fn simplicial_replacement(
    phi: &TupleOfFormulas,
    ell: usize,
    oracle: &dyn CoverOracle,
    opts: &BuildOptions,
) -> Result<ReplacementResult> {
    let poset = build_poset(phi, ell as i64 + 1, 0, oracle, opts)?;
    let complex = poset.order_complex_up_to(opts.max_complex_dim);
    Ok(ReplacementResult {
        poset,
        complex,
        ell,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::DeclaredCoverOracle;

    fn key(ids: &[&str]) -> FormulaKey {
        FormulaKey::new(ids.iter().copied())
    }

    pub(crate) fn sphere_oracle() -> DeclaredCoverOracle {
        DeclaredCoverOracle::new([
            (key(&["a", "b"]), vec!["c".into(), "d".into()]),
            (key(&["c", "d"]), vec!["e".into(), "f".into()]),
            (key(&["e", "f"]), vec![]),
        ])
    }

    fn serial() -> BuildOptions {
        BuildOptions {
            parallel: false,
            ..BuildOptions::default()
        }
    }

    #[test]
    fn base_case_is_antichain() {
        let phi = TupleOfFormulas::identity(["a", "b", "c"]).unwrap();
        let p = build_poset(&phi, -1, 0, &sphere_oracle(), &serial()).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.hasse_edges().is_empty());
    }

    #[test]
    fn single_label_gives_single_element() {
        let phi = TupleOfFormulas::identity(["a"]).unwrap();
        let p = build_poset(&phi, 3, 0, &sphere_oracle(), &serial()).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(
            p.to_json().elements,
            vec![vec![vec!["a".to_string()], vec!["∅".to_string()]]]
        );
    }

    #[test]
    fn sphere_poset_has_six_elements() {
        let phi = TupleOfFormulas::identity(["a", "b"]).unwrap();
        let p = build_poset(&phi, 3, 0, &sphere_oracle(), &serial()).unwrap();
        assert_eq!(p.len(), 6);
        assert_eq!(p.hasse_edges().len(), 8);
        assert_eq!(p.order_complex().betti_numbers(2), vec![1, 0, 1]);
    }

    #[test]
    fn missing_entry_propagates() {
        let phi = TupleOfFormulas::identity(["a", "z"]).unwrap();
        let r = build_poset(&phi, 1, 0, &sphere_oracle(), &serial());
        assert_eq!(r.unwrap_err(), Error::MissingCoverEntry("[a,z]".into()));
    }

    #[test]
    fn budget_is_enforced() {
        let phi = TupleOfFormulas::identity(["a", "b"]).unwrap();
        let opts = BuildOptions {
            budget: 3,
            parallel: false,
            max_complex_dim: None,
        };
        assert_eq!(
            build_poset(&phi, 3, 0, &sphere_oracle(), &opts).unwrap_err(),
            Error::RecursionBudgetExceeded(3)
        );
    }

    #[test]
    fn sub_poset_examples() {
        let phi = TupleOfFormulas::identity(["a", "b"]).unwrap();
        let p = build_poset(&phi, 3, 0, &sphere_oracle(), &serial()).unwrap();
        let all: BTreeSet<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        assert_eq!(sub_poset(&p, &all).unwrap(), p);
        let a: BTreeSet<String> = ["a".to_string()].into();
        let pa = sub_poset(&p, &a).unwrap();
        assert_eq!(pa.len(), 1);
        assert!(pa.element_by_names(&[&["a"]]).is_some());
        assert!(sub_poset(&p, &BTreeSet::new()).unwrap().is_empty());
        let z: BTreeSet<String> = ["z".to_string()].into();
        assert_eq!(
            sub_poset(&p, &z).unwrap_err(),
            Error::UnknownLabel("z".into())
        );
    }

    #[test]
    fn parallel_and_serial_agree() {
        let phi = TupleOfFormulas::identity(["a", "b"]).unwrap();
        let a = build_poset(&phi, 3, 0, &sphere_oracle(), &serial())
            .unwrap()
            .to_json();
        let b = build_poset(&phi, 3, 0, &sphere_oracle(), &BuildOptions::default())
            .unwrap()
            .to_json();
        assert_eq!(a, b);
    }
}
