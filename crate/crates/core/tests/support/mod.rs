#![allow(dead_code)]

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::hash::{Hash, Hasher};
use std::sync::Mutex;

use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::Rng;
use simprep_core::covers::{BoxScene, CoverOracle, DeclaredCoverOracle, FormulaKey};
use simprep_core::persistence::Filtration;
use simprep_core::realroots::{Formula, Rel};
use simprep_core::simplicial::Simplex;
use simprep_core::{BoxSet, IntBox, Poset, Result, SimplicialComplex, UPoly};

pub fn key(ids: &[&str]) -> FormulaKey {
    FormulaKey::new(ids.iter().copied())
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn sphere_catalog() -> DeclaredCoverOracle {
    DeclaredCoverOracle::new([
        (key(&["a", "b"]), vec!["c".into(), "d".into()]),
        (key(&["c", "d"]), vec!["e".into(), "f".into()]),
        (key(&["e", "f"]), vec![]),
    ])
}

/// Two arcs of a circle meeting in two points.
pub fn circle_catalog() -> DeclaredCoverOracle {
    DeclaredCoverOracle::new([
        (key(&["phi0", "phi1"]), vec!["psi0".into(), "psi1".into()]),
        (key(&["psi0", "psi1"]), vec![]),
    ])
}

/// Ring of eight unit squares around `[1,2]^2`, split into two L-shaped halves.
pub fn annulus_scene() -> BoxScene {
    let sq = |x: i64, y: i64| IntBox::new(vec![x, y], vec![x + 1, y + 1]).unwrap();
    let mut sets = BTreeMap::new();
    sets.insert(
        "A".to_string(),
        BoxSet::new(2, vec![sq(0, 0), sq(1, 0), sq(2, 0), sq(2, 1)]).unwrap(),
    );
    sets.insert(
        "B".to_string(),
        BoxSet::new(2, vec![sq(2, 2), sq(1, 2), sq(0, 2), sq(0, 1)]).unwrap(),
    );
    BoxScene::new(2, sets).unwrap()
}

/// Cover oracle driven by a keyed hash: every conjunction gets 0, 1 or 2
/// members, deterministically. Answers are recorded so they can be replayed
/// as a declared catalog.
pub struct HashCatalog {
    seed: u64,
    pub log: Mutex<BTreeMap<FormulaKey, Vec<String>>>,
}

impl HashCatalog {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            log: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn declared(&self) -> DeclaredCoverOracle {
        DeclaredCoverOracle::new(self.log.lock().unwrap().clone())
    }
}

impl CoverOracle for HashCatalog {
    fn cover(&self, _level: usize, target: &FormulaKey) -> Result<Vec<String>> {
        let mut h = DefaultHasher::new();
        (self.seed, target.to_string()).hash(&mut h);
        let n = match h.finish() % 5 {
            0 | 1 => 0,
            2 | 3 => 1,
            _ => 2,
        };
        let members: Vec<String> = (0..n).map(|p| format!("<{target}.{p}>")).collect();
        self.log
            .lock()
            .unwrap()
            .insert(target.clone(), members.clone());
        Ok(members)
    }
}

/// Length (in edges) of the longest chain of a poset.
pub fn longest_chain(p: &Poset) -> usize {
    let n = p.len();
    let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (a, b) in p.hasse_edges() {
        up[a].push(b);
    }
    fn depth(v: usize, up: &[Vec<usize>], memo: &mut [Option<usize>]) -> usize {
        if let Some(d) = memo[v] {
            return d;
        }
        let d = up[v]
            .iter()
            .map(|&w| 1 + depth(w, up, memo))
            .max()
            .unwrap_or(0);
        memo[v] = Some(d);
        d
    }
    let mut memo = vec![None; n];
    (0..n).map(|v| depth(v, &up, &mut memo)).max().unwrap_or(0)
}

/// Freudenthal triangulation of a union of closed integer boxes in the plane.
///
/// A simplex of the triangulated grid lies in the union iff one box holds all
/// of its vertices.
pub fn triangulate_union(boxes: &[IntBox]) -> SimplicialComplex {
    assert!(boxes.iter().all(|b| b.dim() == 2));
    let mut pts: BTreeSet<(i64, i64)> = BTreeSet::new();
    for b in boxes {
        for x in b.lo[0]..=b.hi[0] {
            for y in b.lo[1]..=b.hi[1] {
                pts.insert((x, y));
            }
        }
    }
    let index: HashMap<(i64, i64), usize> = pts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let inside = |s: &[(i64, i64)]| {
        boxes
            .iter()
            .any(|b| s.iter().all(|&(x, y)| b.contains_point(&[x, y])))
    };
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut add = |s: &[(i64, i64)]| {
        if s.iter().all(|p| index.contains_key(p)) && inside(s) {
            gens.push(s.iter().map(|p| index[p]).collect());
        }
    };
    for &(x, y) in &pts {
        add(&[(x, y), (x + 1, y), (x + 1, y + 1)]);
        add(&[(x, y), (x, y + 1), (x + 1, y + 1)]);
        add(&[(x, y), (x + 1, y)]);
        add(&[(x, y), (x, y + 1)]);
        add(&[(x, y), (x + 1, y + 1)]);
    }
    SimplicialComplex::from_simplices(pts.len(), gens).unwrap()
}

/// Random scene with at most `max_labels` labels and `max_boxes` boxes, corners
/// in `[0, extent]^2` and sides of length at most `side`.
pub fn random_scene(
    rng: &mut StdRng,
    max_labels: usize,
    max_boxes: usize,
    extent: i64,
    side: i64,
) -> BoxScene {
    let labels = rng.gen_range(2..=max_labels.min(max_boxes));
    let mut budget = max_boxes;
    let mut sets = BTreeMap::new();
    for l in 0..labels {
        let left = labels - l - 1;
        let n = rng.gen_range(1..=(budget - left).min(3));
        budget -= n;
        let boxes = (0..n)
            .map(|_| {
                let lo: Vec<i64> = (0..2).map(|_| rng.gen_range(0..=extent - side)).collect();
                let hi: Vec<i64> = lo.iter().map(|&c| c + rng.gen_range(0..=side)).collect();
                IntBox::new(lo, hi).unwrap()
            })
            .collect();
        sets.insert(format!("L{l}"), BoxSet::new(2, boxes).unwrap());
    }
    BoxScene::new(2, sets).unwrap()
}

/// The 4x4 grid torus: vertex `4a + b`, two triangles per grid square.
pub fn grid_torus() -> SimplicialComplex {
    let idx = |a: usize, b: usize| (a % 4) * 4 + (b % 4);
    let mut tris = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            tris.push(vec![idx(a, b), idx(a + 1, b), idx(a + 1, b + 1)]);
            tris.push(vec![idx(a, b), idx(a, b + 1), idx(a + 1, b + 1)]);
        }
    }
    SimplicialComplex::from_simplices(16, tris).unwrap()
}

/// Height levels `0..=5` of a standing torus on [`grid_torus`].
pub const TORUS_LEVELS: [i64; 16] = [0, 4, 5, 4, 2, 4, 5, 4, 2, 4, 4, 4, 1, 3, 5, 4];

/// Random filtration with at most `max_simplices` simplices and `max_steps` steps.
pub fn random_filtration(
    rng: &mut StdRng,
    max_simplices: usize,
    max_steps: usize,
) -> Filtration<usize> {
    loop {
        let n = rng.gen_range(1..=7);
        let gens: Vec<Vec<usize>> = (0..rng.gen_range(0..=8))
            .map(|_| {
                let d = rng.gen_range(1..=4usize).min(n);
                let mut s: Vec<usize> = (0..n).collect();
                for i in 0..d {
                    let j = rng.gen_range(i..n);
                    s.swap(i, j);
                }
                s.truncate(d);
                s
            })
            .collect();
        let k = SimplicialComplex::from_simplices(n, gens).unwrap();
        if k.total_count() > max_simplices {
            continue;
        }
        let last = rng.gen_range(0..max_steps);
        let mut steps: HashMap<Simplex, usize> = HashMap::new();
        let mut dim = 0;
        while k.count(dim) > 0 {
            for s in k.simplices(dim) {
                let floor = if s.len() == 1 {
                    0
                } else {
                    simprep_core::simplicial::facets(s)
                        .iter()
                        .map(|f| steps[f])
                        .max()
                        .unwrap()
                };
                let t = (floor + rng.gen_range(0..=1)).min(last);
                steps.insert(s.clone(), t);
            }
            dim += 1;
        }
        return Filtration::from_steps(k, steps, (0..=last).collect()).unwrap();
    }
}

pub fn random_poly(rng: &mut StdRng, max_deg: usize, range: i64) -> UPoly {
    loop {
        let d = rng.gen_range(0..=max_deg);
        let c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-range..=range)).collect();
        let p = UPoly::from_i64(&c);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random formula in one variable: a disjunction of conjunctions of atoms
/// with polynomials of degree at most two.
pub fn random_formula(rng: &mut StdRng) -> Formula {
    const RELS: [Rel; 5] = [Rel::Gt, Rel::Ge, Rel::Eq, Rel::Le, Rel::Lt];
    let disjuncts = (0..rng.gen_range(1..=2))
        .map(|_| {
            let atoms = (0..rng.gen_range(1..=2))
                .map(|_| {
                    let p = loop {
                        let p = random_poly(rng, 2, 3);
                        if !p.is_constant() {
                            break p;
                        }
                    };
                    Formula::atom(p, RELS[rng.gen_range(0..5)])
                })
                .collect();
            Formula::And(atoms)
        })
        .collect();
    Formula::Or(disjuncts)
}

/// Closed set: union of up to three closed intervals or points with integer ends.
pub fn random_closed_set(rng: &mut StdRng) -> Formula {
    let parts = (0..rng.gen_range(1..=3))
        .map(|_| {
            let a = rng.gen_range(-4..=4);
            let w = rng.gen_range(0..=3);
            if w == 0 {
                Formula::atom(UPoly::from_i64(&[-a, 1]), Rel::Eq)
            } else {
                // (X - a)(X - a - w) <= 0
                Formula::atom(
                    &UPoly::from_i64(&[-a, 1]) * &UPoly::from_i64(&[-a - w, 1]),
                    Rel::Le,
                )
            }
        })
        .collect();
    Formula::Or(parts)
}
