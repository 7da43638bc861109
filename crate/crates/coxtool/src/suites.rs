//! Invariant suites run by `coxtool verify` on one irreducible spherical
//! component at a time.

use std::collections::{BTreeMap, BTreeSet};

use coxeter_core::complex::{projection, root_side, wall_panels_in_residue, Panel, Residue, RootSide};
use coxeter_core::diagram::{classify_spherical, spherical_intrinsic_table};
use coxeter_core::oracle::reflection_set;
use coxeter_core::transforms::{decomposition_case, DecompositionCase};
use coxeter_core::{Caps, Classification, CoxeterGroup, CoxeterMatrix, Element, GenSet, SphericalType};

use crate::report::{CheckReport, Evidence};

/// Chamber count above which the geometry suite is skipped.
const COMPLEX_LIMIT: u64 = 2000;
/// Above this many chambers, gates are computed from a sample of chambers.
const ALL_PAIRS_LIMIT: usize = 200;

fn check(subject: &str, claim: &str, outcome: Result<Vec<Evidence>, String>) -> CheckReport {
    let (status, detail, evidence) = match outcome {
        Ok(ev) => ("verified", None, ev),
        Err(w) => ("refuted", Some(w), Vec::new()),
    };
    CheckReport { subject: subject.into(), claim: claim.into(), status: status.into(), detail, evidence }
}

fn skipped(subject: &str, claim: &str, reason: String) -> CheckReport {
    CheckReport {
        subject: subject.into(),
        claim: claim.into(),
        status: "skipped".into(),
        detail: Some(reason),
        evidence: Vec::new(),
    }
}

fn ev(name: &str, value: u64) -> Evidence {
    Evidence { name: name.into(), value }
}

/// Checks that need no enumeration.
pub fn table_checks(m: &CoxeterMatrix, c: GenSet, t: SphericalType, subject: &str) -> Vec<CheckReport> {
    let classified = match classify_spherical(m, c) {
        Ok(Classification::Spherical(u)) if u == t && u.rank() as usize == c.len() => Ok(vec![ev("rank", c.len() as u64)]),
        Ok(other) => Err(format!("classified as {other}")),
        Err(e) => Err(e.to_string()),
    };
    let splits = matches!(decomposition_case(t), DecompositionCase::CaseI { .. } | DecompositionCase::CasesDAndDBar { .. });
    let intrinsic = spherical_intrinsic_table(t);
    let consistent = if splits && intrinsic {
        Err(format!("{t} splits off a Coxeter factor but is listed as intrinsic"))
    } else {
        Ok(vec![ev("intrinsic", intrinsic as u64)])
    };
    vec![
        check(subject, &format!("diagram is of type {t}"), classified),
        check(subject, "intrinsic table agrees with the decomposition table", consistent),
    ]
}

/// Order, center, longest element and reflection count by enumeration,
/// then the Coxeter complex suite when the group is small.
pub fn enumeration_checks(m: &CoxeterMatrix, c: GenSet, t: SphericalType, caps: &Caps, subject: &str) -> Vec<CheckReport> {
    let claims = [
        format!("|W| = {}", t.group_order().map_or("?".into(), |n| n.to_string())),
        "longest element is an involution of length N permuting S".into(),
        format!("center is {}", if t.is_minus_one_type() { "{1, rho}" } else { "trivial" }),
        format!("{} reflections", t.reflection_count()),
        "gates, roots and walls of the Coxeter complex".into(),
    ];
    let order = t.group_order();
    if order.is_none_or(|n| n > caps.max_enum as u64) {
        let reason = format!(
            "CapExceeded: |W| = {} exceeds max-enum {}",
            order.map_or("too large".into(), |n| n.to_string()),
            caps.max_enum
        );
        return claims.iter().map(|k| skipped(subject, k, reason.clone())).collect();
    }
    let sub = m.restrict(c);
    let w = CoxeterGroup::new(sub.clone());
    let e = match w.enumerate(sub.all(), caps.max_enum) {
        Ok(e) => e,
        Err(err) => return claims.iter().map(|k| skipped(subject, k, err.to_string())).collect(),
    };
    let n = e.len() as u64;
    let mut out = Vec::new();
    out.push(check(
        subject,
        &claims[0],
        if Some(n) == order { Ok(vec![ev("elements", n)]) } else { Err(format!("enumerated {n} elements")) },
    ));

    let rho = e.longest();
    let longest = (|| {
        if !w.is_involution(&rho).map_err(|e| e.to_string())? {
            return Err("longest element is not an involution".to_string());
        }
        if rho.len() as u64 != t.reflection_count() {
            return Err(format!("longest element has length {}", rho.len()));
        }
        let mut images = GenSet::EMPTY;
        for g in sub.gens() {
            let x = w.conjugate(&w.generator(g).map_err(|e| e.to_string())?, &rho).map_err(|e| e.to_string())?;
            match x.normal_form() {
                [h] => images.insert(*h),
                _ => return Err(format!("rho {} rho is not a generator", sub.name(g))),
            }
        }
        if images != sub.all() {
            return Err("conjugation by rho is not onto S".into());
        }
        Ok(vec![ev("length", rho.len() as u64)])
    })();
    out.push(check(subject, &claims[1], longest));

    let center = e.center();
    let want = if t.is_minus_one_type() { vec![Element::identity(), rho.clone()] } else { vec![Element::identity()] };
    out.push(check(
        subject,
        &claims[2],
        if center == want { Ok(vec![ev("center", center.len() as u64)]) } else { Err(format!("center has {} elements", center.len())) },
    ));

    let refl = reflection_set(&w, caps.max_enum).map_err(|e| e.to_string());
    out.push(check(
        subject,
        &claims[3],
        refl.and_then(|r| {
            if r.len() as u64 == t.reflection_count() {
                Ok(vec![ev("reflections", r.len() as u64)])
            } else {
                Err(format!("found {} reflections", r.len()))
            }
        }),
    ));

    if n > COMPLEX_LIMIT {
        out.push(skipped(subject, &claims[4], format!("more than {COMPLEX_LIMIT} chambers")));
    } else {
        out.push(check(subject, &claims[4], complex_suite(&w, &e.elements())));
    }
    out
}

/// Root halves, walls partitioning the panels, at most two wall panels per
/// rank-2 residue, and the gate property.
fn complex_suite(w: &CoxeterGroup, chambers: &[Element]) -> Result<Vec<Evidence>, String> {
    let m = w.matrix();
    let cap = chambers.len();
    let err = |e: coxeter_core::Error| e.to_string();
    let mut walls: BTreeMap<Element, BTreeSet<Panel>> = BTreeMap::new();
    for c in chambers {
        for s in m.gens() {
            let p = Panel::new(w, c, s).map_err(err)?;
            if p.chamber == *c {
                walls.entry(p.reflection(w).map_err(err)?).or_default().insert(p);
            }
        }
    }
    let panels: usize = walls.values().map(BTreeSet::len).sum();
    if 2 * panels != chambers.len() * m.rank() {
        return Err(format!("{panels} panels in the walls"));
    }
    for t in walls.keys() {
        let mut positive = 0;
        for c in chambers {
            if root_side(w, t, c).map_err(err)? == RootSide::Positive {
                positive += 1;
            }
        }
        if 2 * positive != chambers.len() {
            return Err(format!("a root of {} has {positive} chambers", w.format(t)));
        }
    }
    let sample: Vec<&Element> = if chambers.len() <= ALL_PAIRS_LIMIT {
        chambers.iter().collect()
    } else {
        // BFS order: the short chambers and the longest one
        chambers.iter().take(ALL_PAIRS_LIMIT / 4).chain(chambers.iter().max_by_key(|c| c.len())).collect()
    };
    let mut gates = 0u64;
    let mut rank2 = 0u64;
    for j in m.all().subsets().filter(|j| !j.is_empty()) {
        let residues: BTreeSet<Residue> =
            chambers.iter().map(|c| Residue::containing(w, j, c)).collect::<Result<_, _>>().map_err(err)?;
        for r in &residues {
            for c in &sample {
                projection(w, r, c, cap).map_err(err)?;
                gates += 1;
            }
            if j.len() == 2 {
                rank2 += 1;
                for t in walls.keys() {
                    let k = wall_panels_in_residue(w, t, r, cap).map_err(err)?.len();
                    if k > 2 {
                        return Err(format!("{k} panels of the wall of {} in one rank-2 residue", w.format(t)));
                    }
                }
            }
        }
    }
    Ok(vec![
        ev("chambers", chambers.len() as u64),
        ev("walls", walls.len() as u64),
        ev("panels", panels as u64),
        ev("gates", gates),
        ev("rank-2 residues", rank2),
    ])
}
