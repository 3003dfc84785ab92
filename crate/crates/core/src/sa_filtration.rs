//! Sub-level filtrations `S_{<= t} = {x in S | P(x) <= t}` of closed,
//! bounded one-variable semi-algebraic sets, reduced to finite filtrations
//! indexed by Thom encodings of critical values.

use std::cmp::Ordering;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::persistence::{barcode, Barcode, Filtration};
use crate::realroots::{
    ball, make_closed, realize, resultant, sublevel, thom_encode, BiPoly, Bound, Formula,
    Realization, ThomEncoding, UPoly,
};
use crate::simplicial::SimplicialComplex;

/// The set `S` given by `phi`, the filtering polynomial `P`, and the
/// maximal homology degree.
#[derive(Clone, Debug)]
pub struct SubLevelProblem {
    pub phi: Formula,
    pub poly: UPoly,
    pub ell: usize,
    /// Intersect `S` with `[-R, R]`; needed when `S` is unbounded.
    pub radius: Option<BigRational>,
}

impl SubLevelProblem {
    pub fn new(phi: Formula, poly: UPoly, ell: usize) -> Self {
        Self {
            phi,
            poly,
            ell,
            radius: None,
        }
    }

    pub fn with_radius(mut self, r: BigRational) -> Self {
        self.radius = Some(r);
        self
    }

    /// `S`, checked to be closed and bounded.
    pub fn set(&self) -> Result<Realization> {
        let phi = self.closed_phi()?;
        let phi = match &self.radius {
            Some(r) => phi.and(ball(r)),
            None => phi,
        };
        let s = realize(&phi);
        if !s.is_bounded() {
            return Err(Error::UnboundedSet);
        }
        Ok(s)
    }

    fn closed_phi(&self) -> Result<Formula> {
        if self.phi.is_weak() {
            // weak atoms only: a closed set already
            Ok(self.phi.clone())
        } else {
            make_closed(&self.phi)
        }
    }

    /// `S_{<= t}` for rational `t`, computed directly from the formula.
    pub fn sublevel_set(&self, t: &BigRational) -> Result<Realization> {
        let mut f = self.closed_phi()?.and(sublevel(&self.poly, t));
        if let Some(r) = &self.radius {
            f = f.and(ball(r));
        }
        Ok(realize(&f))
    }
}

/// Strictly increasing critical values `s_0 < ... < s_M`.
#[derive(Clone, Debug, Default)]
pub struct CriticalValueList {
    values: Vec<ThomEncoding>,
}

impl CriticalValueList {
    /// Sorts and removes duplicates (by the denoted numbers).
    pub fn new(mut values: Vec<ThomEncoding>) -> Self {
        values.sort_by(|a, b| a.compare(b));
        values.dedup_by(|a, b| a.compare(b) == Ordering::Equal);
        Self { values }
    }

    pub fn values(&self) -> &[ThomEncoding] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The list refined by extra rational levels.
    pub fn with_levels(&self, extra: &[BigRational]) -> Self {
        let mut v = self.values.clone();
        v.extend(extra.iter().map(ThomEncoding::rational));
        Self::new(v)
    }

    fn position(&self, x: &ThomEncoding) -> Option<usize> {
        self.values.binary_search_by(|v| v.compare(x)).ok()
    }
}

/// `P(x)` at the algebraic number `x`, as a Thom encoding of a root of
/// `Res_X(q(X), Y - P(X))` where `q` is the square-free part of the
/// polynomial of `x`.
pub fn value_at(p: &UPoly, x: &ThomEncoding) -> Result<ThomEncoding> {
    if let Some(c) = x.as_rational() {
        return Ok(ThomEncoding::rational(&p.eval(&c)));
    }
    let qx = x.poly().square_free();
    let r = resultant(&BiPoly::in_x(&qx), &BiPoly::y_minus(p))?.square_free();
    let mut candidates = crate::realroots::real_roots(&r)?;
    let mut xa = x.alg();
    loop {
        let (lo, hi) = (xa.interval().lo().clone(), xa.interval().hi().clone());
        let (a, b) = p.eval_interval(&lo, &hi);
        let hits: Vec<usize> = candidates
            .iter()
            .enumerate()
            .filter(|(_, c)| c.interval().lo() <= &b && c.interval().hi() >= &a)
            .map(|(k, _)| k)
            .collect();
        if hits.len() == 1 {
            let root = candidates.swap_remove(hits[0]);
            return Ok(ThomEncoding::from_root(r, root));
        }
        xa.refine();
        for k in hits {
            candidates[k].refine();
        }
    }
}

/// Points of `S` where the homotopy type of `S_{<= t}` may change, in
/// increasing order per component: component ends and roots of `P'` inside.
fn special_points(prob: &SubLevelProblem, s: &Realization) -> Result<Vec<Vec<ThomEncoding>>> {
    let dp = prob.poly.derivative();
    let crit = if dp.is_zero() {
        Vec::new()
    } else {
        thom_encode(&dp)?
    };
    let mut out = Vec::new();
    for c in s.components() {
        let (Bound::Finite { at: a, .. }, Bound::Finite { at: b, .. }) = (&c.lo, &c.hi) else {
            return Err(Error::UnboundedSet);
        };
        let mut pts = vec![a.clone()];
        if !c.is_point() {
            pts.extend(
                crit.iter()
                    .filter(|r| r.compare(a) == Ordering::Greater && r.compare(b) == Ordering::Less)
                    .cloned(),
            );
            pts.push(b.clone());
        }
        out.push(pts);
    }
    Ok(out)
}

struct Skeleton {
    complex: SimplicialComplex,
    values: Vec<ThomEncoding>,
}

fn skeleton(prob: &SubLevelProblem) -> Result<Option<Skeleton>> {
    let s = prob.set()?;
    if s.is_empty() {
        return Ok(None);
    }
    let pts = special_points(prob, &s)?;
    let mut values = Vec::new();
    let mut edges = Vec::new();
    for comp in &pts {
        let base = values.len();
        for x in comp {
            values.push(value_at(&prob.poly, x)?);
        }
        for k in 1..comp.len() {
            edges.push(vec![base + k - 1, base + k]);
        }
    }
    let complex = SimplicialComplex::from_simplices(values.len(), edges)?;
    Ok(Some(Skeleton { complex, values }))
}

/// Critical values of `P` on `S`: values at component ends and at roots of
/// `P'` in `S`.
pub fn critical_values_1d(prob: &SubLevelProblem) -> Result<CriticalValueList> {
    Ok(match skeleton(prob)? {
        None => CriticalValueList::default(),
        Some(sk) => CriticalValueList::new(sk.values),
    })
}

/// The finite filtration `K_0 ⊆ ... ⊆ K_M` with `K_i ≃ S_{<= s_i}`.
///
/// `crit` may contain more levels than [`critical_values_1d`] returns, but
/// must contain all of those.
pub fn finite_filtration_1d(
    prob: &SubLevelProblem,
    crit: &CriticalValueList,
) -> Result<Filtration<ThomEncoding>> {
    let Some(sk) = skeleton(prob)? else {
        return Err(Error::InvalidInput(
            "the set is empty, so its filtration has no steps".into(),
        ));
    };
    let mut vstep = Vec::with_capacity(sk.values.len());
    for v in &sk.values {
        match crit.position(v) {
            Some(k) => vstep.push(k),
            None => {
                return Err(Error::InvalidInput(format!(
                    "critical value {v} (~{:.6}) missing from the level list",
                    v.approx()
                )))
            }
        }
    }
    let steps = sk
        .complex
        .iter()
        .map(|s| {
            (
                s.clone(),
                s.iter().map(|&v| vstep[v]).max().expect("nonempty simplex"),
            )
        })
        .collect();
    Filtration::from_steps(sk.complex, steps, crit.values().to_vec())
}

/// Barcodes `B_0, ..., B_ell` of the sub-level filtration of `P` on `S`.
pub fn sa_barcode_1d(prob: &SubLevelProblem) -> Result<Vec<Barcode<ThomEncoding>>> {
    sa_barcode_1d_with(prob, &[])
}

/// As [`sa_barcode_1d`], with extra rational levels inserted.
pub fn sa_barcode_1d_with(
    prob: &SubLevelProblem,
    extra: &[BigRational],
) -> Result<Vec<Barcode<ThomEncoding>>> {
    let crit = critical_values_1d(prob)?;
    if crit.is_empty() {
        return Ok((0..=prob.ell)
            .map(|p| Barcode::new(p, Vec::new()))
            .collect());
    }
    let f = finite_filtration_1d(prob, &crit.with_levels(extra))?;
    Ok(barcode(&f, prob.ell))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::persistence::Death;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn prob(set: &str, p: &str) -> SubLevelProblem {
        SubLevelProblem::new(Formula::parse(set).unwrap(), UPoly::parse(p).unwrap(), 1)
    }

    #[test]
    fn parabola_on_interval() {
        let pr = prob("1 - X^2 >= 0", "X^2");
        let crit = critical_values_1d(&pr).unwrap();
        let vals: Vec<_> = crit
            .values()
            .iter()
            .map(|v| v.as_rational().unwrap())
            .collect();
        assert_eq!(vals, vec![q(0), q(1)]);
        let f = finite_filtration_1d(&pr, &crit).unwrap();
        assert_eq!(f.step(0).unwrap().total_count(), 1);
        let b = sa_barcode_1d(&pr).unwrap();
        assert_eq!(b[0].bars().len(), 1);
        assert_eq!(b[0].bars()[0].birth.as_rational(), Some(q(0)));
        assert!(b[0].bars()[0].death.is_infinite());
        assert!(b[1].is_empty());
    }

    #[test]
    fn two_intervals() {
        let pr = prob(
            "(X + 2 >= 0 and X + 1 <= 0) or (X - 1 >= 0 and X - 2 <= 0)",
            "X",
        );
        let crit = critical_values_1d(&pr).unwrap();
        assert_eq!(crit.len(), 4);
        let b = sa_barcode_1d(&pr).unwrap();
        let births: Vec<_> = b[0]
            .bars()
            .iter()
            .map(|x| x.birth.as_rational().unwrap())
            .collect();
        assert_eq!(births, vec![q(-2), q(1)]);
        assert!(b[0]
            .bars()
            .iter()
            .all(|x| matches!(x.death, Death::Infinite)));
    }

    #[test]
    fn empty_and_point_sets() {
        let pr = prob("X^2 + 1 <= 0", "X");
        assert!(critical_values_1d(&pr).unwrap().is_empty());
        assert!(sa_barcode_1d(&pr).unwrap().iter().all(Barcode::is_empty));
        let pt = prob("X - 3 = 0", "X^2 + 1");
        let crit = critical_values_1d(&pt).unwrap();
        assert_eq!(crit.len(), 1);
        assert_eq!(crit.values()[0].as_rational(), Some(q(10)));
    }

    #[test]
    fn unbounded_needs_radius() {
        let pr = prob("X >= 0", "X");
        assert_eq!(sa_barcode_1d(&pr).unwrap_err(), Error::UnboundedSet);
        let b = sa_barcode_1d(&pr.with_radius(q(5))).unwrap();
        assert_eq!(b[0].bars().len(), 1);
    }

    #[test]
    fn merging_components() {
        // X^4 - 2X^2 on [-2, 2]: two minima at -1 and 1 merge at 0
        let pr = prob("4 - X^2 >= 0", "X^4 - 2*X^2");
        let b = sa_barcode_1d(&pr).unwrap();
        assert_eq!(b[0].total(), 2);
        let finite: Vec<_> = b[0]
            .bars()
            .iter()
            .filter(|x| !x.death.is_infinite())
            .collect();
        assert_eq!(finite.len(), 1);
        assert_eq!(finite[0].birth.as_rational(), Some(q(-1)));
        assert!(matches!(&finite[0].death, Death::Finite(d) if d.as_rational() == Some(q(0))));
    }

    #[test]
    fn irrational_values() {
        let pr = prob("X^2 - 2 <= 0", "X^3");
        let crit = critical_values_1d(&pr).unwrap();
        assert_eq!(crit.len(), 3);
        assert!((crit.values()[2].approx() - 2f64.sqrt().powi(3)).abs() < 1e-9);
    }

    #[test]
    fn refinement_keeps_barcode() {
        let pr = prob("4 - X^2 >= 0", "X^4 - 2*X^2");
        let a = sa_barcode_1d(&pr).unwrap();
        let extra = [q(-3), BigRational::new(1.into(), 3.into()), q(5)];
        assert_eq!(a, sa_barcode_1d_with(&pr, &extra).unwrap());
    }

    #[test]
    fn strict_input_is_closed_first() {
        let pr = prob("X > 0 or X = 0", "X").with_radius(q(1));
        assert_eq!(sa_barcode_1d(&pr).unwrap()[0].total(), 1);
        let bad = prob("X > 0 and X < 1", "X");
        assert!(matches!(sa_barcode_1d(&bad), Err(Error::NotClosed { .. })));
    }
}
