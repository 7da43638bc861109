//! The Coxeter complex of `(W, S)`: chambers are group elements, `W` acts on
//! them by left multiplication, and `c`, `c s` are `s`-adjacent.
//!
//! A residue of type `J` is a coset `c<J>`, the distance between chambers is
//! `l(c^-1 d)`, and the panel `{c, c s}` is fixed by the reflection
//! `c s c^-1`. The two roots of a reflection `t` are told apart by comparing
//! `l(t c)` with `l(c)`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::irreducible_components;
use crate::error::Error;
use crate::matrix::{Gen, GenSet};
use crate::words::{CoxeterGroup, Element};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootSide {
    Positive,
    Negative,
}

impl RootSide {
    pub fn opposite(self) -> RootSide {
        match self {
            RootSide::Positive => RootSide::Negative,
            RootSide::Negative => RootSide::Positive,
        }
    }
}

/// `{c, c s}`, stored with `c` the shorter chamber.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Panel {
    pub chamber: Element,
    pub gen: Gen,
}

impl Panel {
    pub fn new(w: &CoxeterGroup, c: &Element, s: Gen) -> Result<Panel, Error> {
        let cs = w.multiply(c, &w.generator(s)?)?;
        let chamber = if cs.len() < c.len() { cs } else { c.clone() };
        Ok(Panel { chamber, gen: s })
    }

    pub fn chambers(&self, w: &CoxeterGroup) -> Result<[Element; 2], Error> {
        let other = w.multiply(&self.chamber, &w.generator(self.gen)?)?;
        Ok([self.chamber.clone(), other])
    }

    /// The reflection fixing the panel.
    pub fn reflection(&self, w: &CoxeterGroup) -> Result<Element, Error> {
        let c_inv = w.invert(&self.chamber)?;
        w.conjugate(&w.generator(self.gen)?, &c_inv)
    }
}

/// `representative<J>`, with the representative of minimal length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    pub subset: GenSet,
    pub representative: Element,
}

impl Residue {
    /// The residue of type `J` containing `c`.
    pub fn containing(w: &CoxeterGroup, subset: GenSet, c: &Element) -> Result<Residue, Error> {
        let mut rep = c.clone();
        loop {
            let descents = w.right_descents(&rep)?.intersection(subset);
            match descents.first() {
                Some(g) => rep = w.multiply(&rep, &w.generator(g)?)?,
                None => return Ok(Residue { subset, representative: rep }),
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.subset.len()
    }

    pub fn contains(&self, w: &CoxeterGroup, c: &Element) -> Result<bool, Error> {
        let offset = w.multiply(&w.invert(&self.representative)?, c)?;
        Ok(offset.support().is_subset(self.subset))
    }

    pub fn chambers(&self, w: &CoxeterGroup, cap: usize) -> Result<Vec<Element>, Error> {
        let sub = w.enumerate(self.subset, cap)?;
        (0..sub.len()).map(|i| w.multiply(&self.representative, &sub.element(i))).collect()
    }

    /// Whether `x R = R`.
    pub fn is_stabilized_by(&self, w: &CoxeterGroup, x: &Element) -> Result<bool, Error> {
        let moved = w.multiply(x, &self.representative)?;
        self.contains(w, &moved)
    }
}

pub fn distance(w: &CoxeterGroup, c: &Element, d: &Element) -> Result<usize, Error> {
    Ok(w.multiply(&w.invert(c)?, d)?.len())
}

pub fn is_reflection(w: &CoxeterGroup, t: &Element) -> Result<bool, Error> {
    w.is_reflection_in(w.matrix().all(), t)
}

/// Side of the wall of `t` on which `c` lies; the identity is on the
/// positive side.
pub fn root_side(w: &CoxeterGroup, t: &Element, c: &Element) -> Result<RootSide, Error> {
    if !is_reflection(w, t)? {
        return Err(Error::NotAReflection);
    }
    let tc = w.multiply(t, c)?;
    Ok(if tc.len() > c.len() { RootSide::Positive } else { RootSide::Negative })
}

/// Both chambers of `p` lie on the side `side` of `t`.
fn panel_side(w: &CoxeterGroup, t: &Element, p: &Panel) -> Result<Option<RootSide>, Error> {
    let [c, d] = p.chambers(w)?;
    let (x, y) = (root_side(w, t, &c)?, root_side(w, t, &d)?);
    Ok(if x == y { Some(x) } else { None })
}

/// The chamber of `r` nearest to `c`, checked against the gate property
/// `d(c, x) = d(c, gate) + d(gate, x)` for every chamber `x` of `r`.
pub fn projection(w: &CoxeterGroup, r: &Residue, c: &Element, cap: usize) -> Result<Element, Error> {
    let chambers = r.chambers(w, cap)?;
    let c_inv = w.invert(c)?;
    let dist: Vec<usize> = chambers.iter().map(|x| w.multiply(&c_inv, x).map(|e| e.len())).collect::<Result<_, _>>()?;
    let best = *dist.iter().min().expect("residues are nonempty");
    let mut nearest = chambers.iter().zip(&dist).filter(|(_, &d)| d == best).map(|(x, _)| x);
    let gate = nearest.next().expect("minimum is attained").clone();
    if nearest.next().is_some() {
        return Err(Error::HypothesisViolated("nearest chamber of the residue is not unique".into()));
    }
    let gate_inv = w.invert(&gate)?;
    for (x, &d) in chambers.iter().zip(&dist) {
        if d != best + w.multiply(&gate_inv, x)?.len() {
            return Err(Error::HypothesisViolated("gate property fails".into()));
        }
    }
    Ok(gate)
}

/// Panels of `r` fixed by `t`.
pub fn wall_panels_in_residue(w: &CoxeterGroup, t: &Element, r: &Residue, cap: usize) -> Result<Vec<Panel>, Error> {
    let mut out = BTreeSet::new();
    for c in r.chambers(w, cap)? {
        // t fixes the panel {c, cs} exactly when t c = c s
        let tc = w.multiply(t, &c)?;
        if tc.len().abs_diff(c.len()) != 1 {
            continue;
        }
        for s in r.subset.iter() {
            if w.multiply(&c, &w.generator(s)?)? == tc {
                out.insert(Panel::new(w, &c, s)?);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Every panel fixed by `t`, in a finite group.
pub fn wall(w: &CoxeterGroup, t: &Element, cap: usize) -> Result<Vec<Panel>, Error> {
    let all = Residue { subset: w.matrix().all(), representative: Element::identity() };
    wall_panels_in_residue(w, t, &all, cap)
}

/// Sides of a panel with respect to the walls of `u` and `v`.
type Sides = (Option<RootSide>, Option<RootSide>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SandwichReport {
    /// Root of `u` that is called alpha; the root of `v` is the positive one.
    pub alpha: RootSide,
    pub beta: RootSide,
    /// Panels of the wall of `t` inside `alpha & beta` and inside
    /// `-alpha & -beta`.
    pub t_panels: [usize; 2],
    /// Panels of the wall of `u t u` inside `alpha & -beta` and inside
    /// `-alpha & beta`.
    pub utu_panels: [usize; 2],
}

/// For reflections `t, u, v` stabilizing the rank-2 residue `r`, with `u`
/// and `v` commuting, finds roots `alpha` of `u` and `beta` of `v` such that
/// the wall of `t` lies in `(alpha & beta) | (-alpha & -beta)`, and checks
/// that the wall of `u t u` lies in the mixed regions. Exhaustive, so the
/// group must be finite.
pub fn check_wall_sandwich(
    w: &CoxeterGroup,
    r: &Residue,
    t: &Element,
    u: &Element,
    v: &Element,
    cap: usize,
) -> Result<SandwichReport, Error> {
    if r.rank() != 2 {
        return Err(Error::HypothesisViolated("residue is not of rank 2".into()));
    }
    if t == u || u == v || t == v {
        return Err(Error::HypothesisViolated("reflections are not pairwise distinct".into()));
    }
    for (name, x) in [("t", t), ("u", u), ("v", v)] {
        if !is_reflection(w, x)? {
            return Err(Error::HypothesisViolated(alloc::format!("{name} is not a reflection")));
        }
        if !r.is_stabilized_by(w, x)? {
            return Err(Error::HypothesisViolated(alloc::format!("{name} does not stabilize the residue")));
        }
    }
    if w.multiply(u, v)? != w.multiply(v, u)? {
        return Err(Error::HypothesisViolated("u and v do not commute".into()));
    }
    let utu = w.product(&[u, t, u])?;
    let t_wall = wall(w, t, cap)?;
    let utu_wall = wall(w, &utu, cap)?;
    let sides = |panels: &[Panel]| -> Result<Vec<Sides>, Error> {
        panels.iter().map(|p| Ok((panel_side(w, u, p)?, panel_side(w, v, p)?))).collect()
    };
    let t_sides = sides(&t_wall)?;
    let utu_sides = sides(&utu_wall)?;
    let beta = RootSide::Positive;
    for alpha in [RootSide::Positive, RootSide::Negative] {
        let same = [(Some(alpha), Some(beta)), (Some(alpha.opposite()), Some(beta.opposite()))];
        let mixed = [(Some(alpha), Some(beta.opposite())), (Some(alpha.opposite()), Some(beta))];
        if t_sides.iter().all(|x| same.contains(x)) {
            if !utu_sides.iter().all(|x| mixed.contains(x)) {
                return Err(Error::HypothesisViolated("wall of utu is not in the mixed regions".into()));
            }
            let count = |v: &[Sides], k: Sides| {
                v.iter().filter(|&&x| x == k).count()
            };
            return Ok(SandwichReport {
                alpha,
                beta,
                t_panels: [count(&t_sides, same[0]), count(&t_sides, same[1])],
                utu_panels: [count(&utu_sides, mixed[0]), count(&utu_sides, mixed[1])],
            });
        }
    }
    Err(Error::HypothesisViolated("no pair of roots sandwiches the wall of t".into()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedResidues {
    pub residues: Vec<Residue>,
    /// Present when a reflection was supplied: the sides of its wall met by
    /// the residues found.
    pub sides: Option<BTreeSet<RootSide>>,
    /// `<U, t>` closed within the cap. When it did not, the side report only
    /// covers the ball.
    pub closure_finite: Option<bool>,
}

fn closure_size(w: &CoxeterGroup, gens: &[Element], cap: usize) -> Result<Option<usize>, Error> {
    let mut seen = BTreeSet::from([Element::identity()]);
    let mut frontier = vec![Element::identity()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = w.multiply(g, &x)?;
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Ok(None);
                }
                frontier.push(y);
            }
        }
    }
    Ok(Some(seen.len()))
}

/// Spherical residues with representative in the ball of radius `radius`
/// that are stabilized by every element of `u`.
pub fn spherical_residues_fixed_by(
    w: &CoxeterGroup,
    u: &[Element],
    radius: usize,
    reflection: Option<&Element>,
    cap: usize,
) -> Result<FixedResidues, Error> {
    if closure_size(w, u, cap)?.is_none() {
        return Err(Error::CapExceeded { cap });
    }
    let m = w.matrix();
    let spherical: Vec<GenSet> = m
        .all()
        .subsets()
        .filter(|&j| irreducible_components(m, j).is_ok_and(|d| d.is_spherical()))
        .collect();
    let mut ball = vec![Element::identity()];
    let mut seen = BTreeSet::from([Element::identity()]);
    let mut layer = ball.clone();
    for _ in 0..radius {
        let mut next = Vec::new();
        for x in &layer {
            for g in m.gens() {
                let y = w.multiply(x, &w.generator(g)?)?;
                if y.len() > x.len() && seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        if seen.len() > cap {
            return Err(Error::CapExceeded { cap });
        }
        ball.extend(next.iter().cloned());
        layer = next;
    }
    let mut residues = Vec::new();
    for x in &ball {
        let descents = w.right_descents(x)?;
        for &j in &spherical {
            if !descents.intersection(j).is_empty() {
                continue;
            }
            let r = Residue { subset: j, representative: x.clone() };
            let fixed = u.iter().map(|g| r.is_stabilized_by(w, g)).collect::<Result<Vec<_>, _>>()?;
            if fixed.into_iter().all(|f| f) {
                residues.push(r);
            }
        }
    }
    residues.sort();
    let (sides, closure_finite) = match reflection {
        None => (None, None),
        Some(t) => {
            let mut sides = BTreeSet::new();
            for r in &residues {
                for c in r.chambers(w, cap)? {
                    sides.insert(root_side(w, t, &c)?);
                }
            }
            let mut gens = u.to_vec();
            gens.push(t.clone());
            (Some(sides), Some(closure_size(w, &gens, cap)?.is_some()))
        }
    };
    Ok(FixedResidues { residues, sides, closure_finite })
}
