//! Exhaustive checks of Coxeter complex geometry on a finite group.

use std::collections::{BTreeMap, BTreeSet};

use coxeter_core::complex::{projection, root_side, wall, wall_panels_in_residue, Panel, Residue, RootSide};
use coxeter_core::{CoxeterGroup, Element, GenSet};

#[derive(Debug, Default, Clone, Copy)]
pub struct SuiteCounts {
    pub chambers: usize,
    pub reflections: usize,
    pub gates: usize,
    pub rank2_residues: usize,
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

/// Gate equation for every residue and chamber, root halves, walls
/// partitioning the panels, and at most two wall panels per rank-2 residue.
pub fn check_finite_complex(w: &CoxeterGroup) -> Result<SuiteCounts, String> {
    check_finite_complex_from(w, usize::MAX, 0)
}

/// As [`check_finite_complex`], but above `all_pairs` chambers the gates are
/// taken from the first `sample` chambers in BFS order and the longest
/// element only. Distances are invariant under left multiplication, so every
/// pair (residue, chamber) is a translate of a pair (residue, 1).
pub fn check_finite_complex_from(w: &CoxeterGroup, all_pairs: usize, sample: usize) -> Result<SuiteCounts, String> {
    let m = w.matrix();
    let cap = 200_000;
    let e = w.enumerate(m.all(), cap).map_err(|e| e.to_string())?;
    let n = e.len();
    let chambers = e.elements();
    let mut counts = SuiteCounts { chambers: n, ..SuiteCounts::default() };

    // reflections and their walls, read off the panels
    let mut walls: BTreeMap<Element, BTreeSet<Panel>> = BTreeMap::new();
    for c in &chambers {
        for s in m.gens() {
            let p = Panel::new(w, c, s).unwrap();
            if p.chamber == *c {
                let t = w.conjugate(&w.generator(s).unwrap(), &w.invert(c).unwrap()).unwrap();
                ensure!(p.reflection(w).unwrap() == t, "panel reflection of {c:?}");
                walls.entry(t).or_default().insert(p);
            }
        }
    }
    counts.reflections = walls.len();
    let panels: usize = walls.values().map(|x| x.len()).sum();
    ensure!(panels == n * m.rank() / 2, "panels counted {panels}, expected {}", n * m.rank() / 2);

    for (t, panels) in &walls {
        let from_lib: BTreeSet<Panel> = wall(w, t, cap).unwrap().into_iter().collect();
        ensure!(&from_lib == panels, "wall of {t:?}");
        let mut positive = 0;
        for c in &chambers {
            let side = root_side(w, t, c).unwrap();
            let tc = w.multiply(t, c).unwrap();
            ensure!(root_side(w, t, &tc).unwrap() == side.opposite(), "t does not swap the roots at {c:?}");
            if side == RootSide::Positive {
                positive += 1;
            }
        }
        ensure!(2 * positive == n, "root of {t:?} has {positive} of {n} chambers");
        // every wall panel separates the two roots
        for p in panels {
            let [c, d] = p.chambers(w).unwrap();
            ensure!(root_side(w, t, &c).unwrap() != root_side(w, t, &d).unwrap(), "panel on one side");
        }
    }

    let sources: Vec<&Element> = if n <= all_pairs {
        chambers.iter().collect()
    } else {
        chambers.iter().take(sample).chain(chambers.iter().max_by_key(|c| c.len())).collect()
    };
    let descents: Vec<GenSet> = chambers.iter().map(|c| w.right_descents(c).unwrap()).collect();
    let subsets: Vec<GenSet> = m.all().subsets().filter(|j| !j.is_empty()).collect();
    for &j in &subsets {
        // one residue per chamber without right descents in J
        let residues: Vec<Residue> = chambers
            .iter()
            .zip(&descents)
            .filter(|(_, d)| d.intersection(j).is_empty())
            .map(|(c, _)| Residue { subset: j, representative: c.clone() })
            .collect();
        let order = w.enumerate(j, cap).unwrap().len();
        ensure!(residues.len() * order == n, "{} residues of size {order} for J = {j:?}", residues.len());
        for c in &sources {
            let r = Residue::containing(w, j, c).unwrap();
            ensure!(residues.contains(&r), "residue of {c:?} is not minimal");
            ensure!(r.contains(w, c).unwrap(), "residue of {c:?} misses it");
        }
        for r in &residues {
            for c in &sources {
                let gate = projection(w, r, c, cap).map_err(|e| format!("{e} for J = {j:?}"))?;
                ensure!(r.contains(w, &gate).unwrap(), "gate outside the residue");
                counts.gates += 1;
            }
            if j.len() == 2 {
                counts.rank2_residues += 1;
                for t in walls.keys() {
                    let k = wall_panels_in_residue(w, t, r, cap).unwrap().len();
                    ensure!(k <= 2, "{k} panels of one wall in a rank-2 residue");
                }
            }
        }
    }
    Ok(counts)
}
