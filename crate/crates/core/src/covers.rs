//! Cover oracles: given a conjunction of previously issued formulas, return
//! a list of closed, connected-enough pieces whose union is its realization.
//!
//! Two oracles ship with the crate. [`DeclaredCoverOracle`] answers from a
//! user-supplied catalog and trusts the connectivity of what it is told.
//! [`BoxCoverOracle`] works on finite unions of closed integer boxes, where
//! every member it hands out is a single box and therefore contractible.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Canonical name of the conjunction of a multiset of formula ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FormulaKey(Vec<String>);

impl FormulaKey {
    pub fn new<I, S>(ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut v: Vec<String> = ids.into_iter().map(Into::into).collect();
        v.sort();
        Self(v)
    }

    pub fn members(&self) -> &[String] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for FormulaKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.join(","))
    }
}

/// What the oracle promises about its members. The library cannot check it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Connectivity {
    /// Members are declared ℓ-connected by the caller.
    Trusted,
    /// Members are contractible by construction.
    Contractible,
}

/// Realizes the pair of functions "number of pieces" and "pieces" on formula keys.
///
/// `cover(level, key)` returns the member ids covering the realization of
/// `key`; an empty list means the realization is empty. Implementations must
/// be deterministic and callable from several threads.
pub trait CoverOracle: Send + Sync {
    fn cover(&self, level: usize, target: &FormulaKey) -> Result<Vec<String>>;

    fn connectivity(&self) -> Connectivity {
        Connectivity::Trusted
    }
}

/// Catalog file entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub key: Vec<String>,
    pub members: Vec<String>,
}

/// Catalog file: `{"entries": [{"key": [..], "members": [..]}, ..]}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogFile {
    pub entries: Vec<CatalogEntry>,
}

/// Oracle answering lookups from a declared catalog.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DeclaredCoverOracle {
    catalog: BTreeMap<FormulaKey, Vec<String>>,
}

impl DeclaredCoverOracle {
    pub fn new(catalog: impl IntoIterator<Item = (FormulaKey, Vec<String>)>) -> Self {
        Self {
            catalog: catalog.into_iter().collect(),
        }
    }

    pub fn from_file(file: &CatalogFile) -> Result<Self> {
        let mut catalog = BTreeMap::new();
        for e in &file.entries {
            let key = FormulaKey::new(e.key.iter().cloned());
            if catalog.insert(key.clone(), e.members.clone()).is_some() {
                return Err(Error::InvalidInput(format!("duplicate catalog key {key}")));
            }
        }
        Ok(Self { catalog })
    }

    pub fn to_file(&self) -> CatalogFile {
        CatalogFile {
            entries: self
                .catalog
                .iter()
                .map(|(k, m)| CatalogEntry {
                    key: k.members().to_vec(),
                    members: m.clone(),
                })
                .collect(),
        }
    }

    pub fn insert(&mut self, key: FormulaKey, members: Vec<String>) {
        self.catalog.insert(key, members);
    }

    pub fn len(&self) -> usize {
        self.catalog.len()
    }

    pub fn is_empty(&self) -> bool {
        self.catalog.is_empty()
    }
}

impl CoverOracle for DeclaredCoverOracle {
    fn cover(&self, _level: usize, target: &FormulaKey) -> Result<Vec<String>> {
        if target.is_empty() {
            return Ok(Vec::new());
        }
        self.catalog
            .get(target)
            .cloned()
            .ok_or_else(|| Error::MissingCoverEntry(target.to_string()))
    }
}

/// Closed axis-aligned box `[lo_0, hi_0] x ... x [lo_{k-1}, hi_{k-1}]` on the integer grid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntBox {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl IntBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                found: hi.len(),
            });
        }
        Ok(Self { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lo.iter().zip(&self.hi).any(|(l, h)| l > h)
    }

    pub fn intersect(&self, other: &IntBox) -> Option<IntBox> {
        let b = IntBox {
            lo: self
                .lo
                .iter()
                .zip(&other.lo)
                .map(|(a, b)| *a.max(b))
                .collect(),
            hi: self
                .hi
                .iter()
                .zip(&other.hi)
                .map(|(a, b)| *a.min(b))
                .collect(),
        };
        (!b.is_empty()).then_some(b)
    }

    pub fn contains_box(&self, other: &IntBox) -> bool {
        self.lo.iter().zip(&other.lo).all(|(a, b)| a <= b)
            && self.hi.iter().zip(&other.hi).all(|(a, b)| a >= b)
    }

    pub fn contains_point(&self, p: &[i64]) -> bool {
        p.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(x, (l, h))| l <= x && x <= h)
    }

    /// Canonical member id, e.g. `[0..1]x[2..2]`.
    pub fn id(&self) -> String {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| format!("[{l}..{h}]"))
            .collect::<Vec<_>>()
            .join("x")
    }
}

/// Finite union of closed integer boxes in a fixed dimension.
///
/// Stored in normal form: empty boxes dropped, boxes contained in another
/// box removed, remaining boxes sorted and distinct.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoxSet {
    dim: usize,
    boxes: Vec<IntBox>,
}

impl BoxSet {
    pub fn new(dim: usize, boxes: Vec<IntBox>) -> Result<Self> {
        if let Some(b) = boxes.iter().find(|b| b.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: b.dim(),
            });
        }
        Ok(Self {
            dim,
            boxes: normalize(boxes),
        })
    }

    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            boxes: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn boxes(&self) -> &[IntBox] {
        &self.boxes
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn intersect(&self, other: &BoxSet) -> Result<BoxSet> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let boxes = self
            .boxes
            .iter()
            .flat_map(|a| other.boxes.iter().filter_map(move |b| a.intersect(b)))
            .collect();
        Ok(Self {
            dim: self.dim,
            boxes: normalize(boxes),
        })
    }

    pub fn contains_point(&self, p: &[i64]) -> bool {
        self.boxes.iter().any(|b| b.contains_point(p))
    }
}

fn normalize(mut boxes: Vec<IntBox>) -> Vec<IntBox> {
    boxes.retain(|b| !b.is_empty());
    boxes.sort();
    boxes.dedup();
    let keep: Vec<bool> = (0..boxes.len())
        .map(|i| {
            !boxes
                .iter()
                .enumerate()
                .any(|(j, o)| j != i && o.contains_box(&boxes[i]))
        })
        .collect();
    boxes
        .into_iter()
        .zip(keep)
        .filter_map(|(b, k)| k.then_some(b))
        .collect()
}

/// Scene file: `{"dim": k, "sets": {"label": [[[lo..],[hi..]], ..], ..}}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SceneFile {
    pub dim: usize,
    pub sets: BTreeMap<String, Vec<[Vec<i64>; 2]>>,
}

/// Labelled box sets in a common dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxScene {
    dim: usize,
    sets: BTreeMap<String, BoxSet>,
}

impl BoxScene {
    pub fn new(dim: usize, sets: BTreeMap<String, BoxSet>) -> Result<Self> {
        if let Some(s) = sets.values().find(|s| s.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: s.dim(),
            });
        }
        Ok(Self { dim, sets })
    }

    pub fn from_file(f: &SceneFile) -> Result<Self> {
        let mut sets = BTreeMap::new();
        for (label, boxes) in &f.sets {
            let bs = boxes
                .iter()
                .map(|[lo, hi]| IntBox::new(lo.clone(), hi.clone()))
                .collect::<Result<Vec<_>>>()?;
            sets.insert(label.clone(), BoxSet::new(f.dim, bs)?);
        }
        Self::new(f.dim, sets)
    }

    pub fn to_file(&self) -> SceneFile {
        SceneFile {
            dim: self.dim,
            sets: self
                .sets
                .iter()
                .map(|(l, s)| {
                    (
                        l.clone(),
                        s.boxes()
                            .iter()
                            .map(|b| [b.lo.clone(), b.hi.clone()])
                            .collect(),
                    )
                })
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> impl Iterator<Item = &String> {
        self.sets.keys()
    }

    pub fn get(&self, label: &str) -> Option<&BoxSet> {
        self.sets.get(label)
    }

    /// Union of all labelled sets.
    pub fn union(&self) -> BoxSet {
        let boxes = self
            .sets
            .values()
            .flat_map(|s| s.boxes().iter().cloned())
            .collect();
        BoxSet {
            dim: self.dim,
            boxes: normalize(boxes),
        }
    }

    fn common(&self, labels: &[String]) -> Result<BoxSet> {
        let mut acc: Option<BoxSet> = None;
        for l in labels {
            let s = self
                .sets
                .get(l)
                .ok_or_else(|| Error::UnknownLabel(l.clone()))?;
            acc = Some(match acc {
                None => s.clone(),
                Some(a) => a.intersect(s)?,
            });
        }
        Ok(acc.unwrap_or_else(|| BoxSet::empty(self.dim)))
    }
}

/// Whether the labelled sets have a common point.
pub fn intersection_nonempty(scene: &BoxScene, labels: &[String]) -> Result<bool> {
    if labels.is_empty() {
        return Err(Error::InvalidInput(
            "intersection of an empty label set".into(),
        ));
    }
    Ok(!scene.common(labels)?.is_empty())
}

/// Oracle over a [`BoxScene`]; members are single boxes named by [`IntBox::id`].
#[derive(Debug)]
pub struct BoxCoverOracle {
    scene: BoxScene,
    issued: Mutex<HashMap<String, IntBox>>,
    memo: Mutex<HashMap<FormulaKey, Vec<String>>>,
}

impl BoxCoverOracle {
    pub fn new(scene: BoxScene) -> Self {
        Self {
            scene,
            issued: Mutex::new(HashMap::new()),
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn scene(&self) -> &BoxScene {
        &self.scene
    }

    /// Box set named by a scene label or an issued member id.
    pub fn resolve(&self, id: &str) -> Result<BoxSet> {
        if let Some(s) = self.scene.get(id) {
            return Ok(s.clone());
        }
        let issued = self.issued.lock().expect("oracle lock poisoned");
        issued
            .get(id)
            .map(|b| BoxSet {
                dim: self.scene.dim,
                boxes: vec![b.clone()],
            })
            .ok_or_else(|| Error::UnknownLabel(id.to_string()))
    }

    /// Exact intersection of the sets named in `key`.
    pub fn realize(&self, key: &FormulaKey) -> Result<BoxSet> {
        let mut acc: Option<BoxSet> = None;
        for id in key.members() {
            let s = self.resolve(id)?;
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s)?,
            });
        }
        Ok(acc.unwrap_or_else(|| BoxSet::empty(self.scene.dim)))
    }
}

impl CoverOracle for BoxCoverOracle {
    fn cover(&self, _level: usize, target: &FormulaKey) -> Result<Vec<String>> {
        if target.is_empty() {
            return Ok(Vec::new());
        }
        if let Some(hit) = self.memo.lock().expect("oracle lock poisoned").get(target) {
            return Ok(hit.clone());
        }
        let set = self.realize(target)?;
        let ids: Vec<String> = set.boxes().iter().map(IntBox::id).collect();
        {
            let mut issued = self.issued.lock().expect("oracle lock poisoned");
            for b in set.boxes() {
                issued.entry(b.id()).or_insert_with(|| b.clone());
            }
        }
        self.memo
            .lock()
            .expect("oracle lock poisoned")
            .insert(target.clone(), ids.clone());
        Ok(ids)
    }

    fn connectivity(&self) -> Connectivity {
        Connectivity::Contractible
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(x: i64, y: i64) -> IntBox {
        IntBox::new(vec![x, y], vec![x + 1, y + 1]).unwrap()
    }

    fn scene(sets: Vec<(&str, Vec<IntBox>)>) -> BoxScene {
        BoxScene::new(
            2,
            sets.into_iter()
                .map(|(l, b)| (l.to_string(), BoxSet::new(2, b).unwrap()))
                .collect(),
        )
        .unwrap()
    }

    fn key(ids: &[&str]) -> FormulaKey {
        FormulaKey::new(ids.iter().copied())
    }

    #[test]
    fn sphere_catalog_lookups() {
        let o = DeclaredCoverOracle::new([
            (key(&["a", "b"]), vec!["c".into(), "d".into()]),
            (key(&["c", "d"]), vec!["e".into(), "f".into()]),
            (key(&["e", "f"]), vec![]),
        ]);
        assert_eq!(o.cover(0, &key(&["b", "a"])).unwrap(), vec!["c", "d"]);
        assert_eq!(o.cover(1, &key(&["c", "d"])).unwrap(), vec!["e", "f"]);
        assert!(o.cover(2, &key(&["e", "f"])).unwrap().is_empty());
        assert!(o.cover(0, &key(&[])).unwrap().is_empty());
        assert_eq!(
            o.cover(0, &key(&["a", "c"])),
            Err(Error::MissingCoverEntry("[a,c]".into()))
        );
    }

    #[test]
    fn catalog_file_roundtrip() {
        let text = r#"{"entries":[{"key":["φ0","φ1"],"members":["ψ0","ψ1"]},{"key":["ψ1","ψ0"],"members":[]}]}"#;
        let f: CatalogFile = serde_json::from_str(text).unwrap();
        let o = DeclaredCoverOracle::from_file(&f).unwrap();
        assert_eq!(
            o.cover(0, &key(&["ψ0", "ψ1"])).unwrap(),
            Vec::<String>::new()
        );
        assert_eq!(DeclaredCoverOracle::from_file(&o.to_file()).unwrap(), o);
    }

    #[test]
    fn edge_sharing_squares_give_one_member() {
        let o = BoxCoverOracle::new(scene(vec![
            ("A", vec![unit(0, 0)]),
            ("B", vec![unit(1, 0)]),
        ]));
        let m = o.cover(0, &key(&["A", "B"])).unwrap();
        assert_eq!(m, vec!["[1..1]x[0..1]"]);
        // members can be fed back in
        assert_eq!(o.cover(1, &FormulaKey::new(m.clone())).unwrap(), m);
    }

    #[test]
    fn annulus_halves_meet_in_two_boxes() {
        let a = vec![unit(0, 0), unit(1, 0), unit(2, 0), unit(2, 1)];
        let b = vec![unit(2, 2), unit(1, 2), unit(0, 2), unit(0, 1)];
        let o = BoxCoverOracle::new(scene(vec![("A", a), ("B", b)]));
        let m = o.cover(0, &key(&["A", "B"])).unwrap();
        assert_eq!(m, vec!["[0..1]x[1..1]", "[2..3]x[2..2]"]);
    }

    #[test]
    fn disjoint_labels_have_empty_cover() {
        let o = BoxCoverOracle::new(scene(vec![
            ("A", vec![unit(0, 0)]),
            ("B", vec![unit(5, 5)]),
        ]));
        assert!(o.cover(0, &key(&["A", "B"])).unwrap().is_empty());
    }

    #[test]
    fn intersection_predicate() {
        let s = scene(vec![
            ("A", vec![unit(0, 0)]),
            ("B", vec![unit(1, 1)]),
            ("C", vec![unit(3, 3)]),
        ]);
        let l = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert!(intersection_nonempty(&s, &l(&["A"])).unwrap());
        assert!(intersection_nonempty(&s, &l(&["A", "B"])).unwrap());
        assert!(!intersection_nonempty(&s, &l(&["A", "C"])).unwrap());
        assert_eq!(
            intersection_nonempty(&s, &l(&["Z"])),
            Err(Error::UnknownLabel("Z".into()))
        );
    }

    #[test]
    fn dimension_mismatch() {
        let b3 = IntBox::new(vec![0, 0, 0], vec![1, 1, 1]).unwrap();
        assert!(matches!(
            BoxSet::new(2, vec![b3]),
            Err(Error::DimensionMismatch { .. })
        ));
        let s3 = BoxSet::empty(3);
        let mut sets = BTreeMap::new();
        sets.insert("A".to_string(), s3);
        assert!(BoxScene::new(2, sets).is_err());
    }

    #[test]
    fn scene_file_roundtrip() {
        let text = r#"{"dim":2,"sets":{"A":[[[0,0],[2,1]]],"B":[[[1,0],[3,3]],[[0,0],[1,1]]]}}"#;
        let f: SceneFile = serde_json::from_str(text).unwrap();
        let s = BoxScene::from_file(&f).unwrap();
        assert_eq!(s.get("B").unwrap().boxes().len(), 2);
        assert_eq!(BoxScene::from_file(&s.to_file()).unwrap(), s);
    }
}
