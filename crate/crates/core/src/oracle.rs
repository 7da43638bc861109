//! Exhaustive checks on finite groups. Nothing here depends on the decision
//! procedure or the rewrites, so results can be compared against them.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::irreducible_components;
use crate::error::Error;
use crate::matrix::{CoxeterMatrix, Gen, GenSet, Order};
use crate::words::{CoxeterGroup, Element, EnumeratedGroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Verified,
    Refuted { witness: String },
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub claim: String,
    pub status: Status,
    /// Named counts gathered along the way.
    pub evidence: Vec<(String, u64)>,
}

impl VerificationReport {
    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self.status, Status::Refuted { .. })
    }

    fn refute(mut self, witness: String) -> Self {
        self.status = Status::Refuted { witness };
        self
    }
}

/// Positions of the closure of `gens` in the enumerated group, by breadth
/// first search.
fn closure(g: &EnumeratedGroup<'_>, gens: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.len()];
    seen[0] = true;
    let mut out = vec![0];
    let mut head = 0;
    while head < out.len() {
        let x = out[head];
        head += 1;
        for &y in gens {
            let z = g.multiply(x, y);
            if !seen[z] {
                seen[z] = true;
                out.push(z);
            }
        }
    }
    out
}

/// Checks that `words` generate `W` and satisfy exactly the relations of
/// `expected`: pairwise product orders match, the closure is all of `W`, and
/// `|W|` is the order of a finite Coxeter group with matrix `expected`.
pub fn verify_coxeter_generating_set(
    w: &CoxeterGroup,
    words: &[Element],
    expected: &CoxeterMatrix,
    cap: usize,
) -> Result<VerificationReport, Error> {
    let mut report = VerificationReport {
        claim: format!("{} words form a Coxeter generating set with the expected matrix", words.len()),
        status: Status::Verified,
        evidence: Vec::new(),
    };
    if words.len() != expected.rank() {
        return Ok(report.refute(format!("{} words for a matrix of rank {}", words.len(), expected.rank())));
    }
    let g = w.enumerate(w.matrix().all(), cap)?;
    report.evidence.push(("group order".into(), g.len() as u64));
    let mut pos = Vec::with_capacity(words.len());
    for x in words {
        pos.push(g.position(x)?.expect("every element lies in W"));
    }
    let order_of = |x: usize| {
        let mut k = 1u32;
        let mut p = x;
        while p != 0 {
            p = g.multiply(p, x);
            k += 1;
        }
        k
    };
    for (i, &x) in pos.iter().enumerate() {
        for (j, &y) in pos.iter().enumerate() {
            let found = if i == j { order_of(x) } else { order_of(g.multiply(x, y)) };
            let want = if i == j { Order::Finite(2) } else { expected.order(Gen(i as u8), Gen(j as u8)) };
            if Order::Finite(found) != want {
                let what = if i == j { format!("order({})", expected.name(Gen(i as u8))) } else {
                    format!("order({} {})", expected.name(Gen(i as u8)), expected.name(Gen(j as u8)))
                };
                return Ok(report.refute(format!("{what} = {found}, expected {want}")));
            }
        }
    }
    let size = closure(&g, &pos).len();
    report.evidence.push(("closure size".into(), size as u64));
    if size != g.len() {
        return Ok(report.refute(format!("closure has {size} of {} elements", g.len())));
    }
    let d = irreducible_components(expected, expected.all())?;
    match d.group_order() {
        Some(n) if d.is_spherical() => {
            report.evidence.push(("expected order".into(), n));
            if n != g.len() as u64 {
                return Ok(report.refute(format!("expected type has order {n}, group has {}", g.len())));
            }
        }
        _ => return Ok(report.refute("expected matrix is not of finite type".into())),
    }
    Ok(report)
}

/// All conjugates of the generators, sorted.
pub fn reflection_set(w: &CoxeterGroup, cap: usize) -> Result<Vec<Element>, Error> {
    let m = w.matrix();
    let mut seen: BTreeSet<Element> = BTreeSet::new();
    let mut frontier: Vec<Element> = Vec::new();
    for g in m.gens() {
        let x = w.generator(g)?;
        if seen.insert(x.clone()) {
            frontier.push(x);
        }
    }
    while let Some(x) = frontier.pop() {
        for g in m.gens() {
            let y = w.conjugate(&x, &w.generator(g)?)?;
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded { cap });
                }
                frontier.push(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Smallest parabolic subgroup `w^-1 <J> w` containing `xs`, found by trying
/// every `w`. Returned as `(J, w)` with `|<J>|` minimal, then `J`, then `w`
/// least.
pub fn parabolic_closure(w: &CoxeterGroup, xs: &[Element], cap: usize) -> Result<(GenSet, Element), Error> {
    let g = w.enumerate(w.matrix().all(), cap)?;
    let mut best: Option<(u64, GenSet, Element)> = None;
    let mut orders: BTreeMap<GenSet, u64> = BTreeMap::new();
    for i in 0..g.len() {
        let v = g.element(i);
        let v_inv = w.invert(&v)?;
        let mut j = GenSet::EMPTY;
        for x in xs {
            j = j.union(w.conjugate(x, &v_inv)?.support());
        }
        let size = match orders.get(&j) {
            Some(&n) => n,
            None => {
                let n = w.enumerate(j, cap)?.len() as u64;
                orders.insert(j, n);
                n
            }
        };
        // keep w minimal within its coset <J> w
        let candidate = (size, j, v);
        let better = match &best {
            None => true,
            Some((n, bj, bw)) => (size, j.0, candidate.2.len(), &candidate.2) < (*n, bj.0, bw.len(), bw),
        };
        if better {
            best = Some(candidate);
        }
    }
    let (_, j, v) = best.expect("the identity is always tried");
    Ok((j, v))
}

/// Subsets `J` whose longest element is central in `<J>`, by enumeration.
fn minus_one_subsets(w: &CoxeterGroup, cap: usize) -> Result<Vec<(GenSet, Element)>, Error> {
    let mut out = Vec::new();
    for j in w.matrix().all().subsets() {
        let g = w.enumerate(j, cap)?;
        if g.center_positions().contains(&g.longest_position()) {
            out.push((j, g.longest()));
        }
    }
    out.sort_by_key(|(j, _)| (j.len(), j.0));
    Ok(out)
}

/// A subset `J` of `(-1)`-type and `v` with `v^-1 r v = rho_J`.
pub fn minus_one_form(w: &CoxeterGroup, r: &Element, cap: usize) -> Result<(GenSet, Element), Error> {
    if !w.power(r, 2)?.is_identity() {
        return Err(Error::NotInvolution);
    }
    let g = w.enumerate(w.matrix().all(), cap)?;
    let subsets = minus_one_subsets(w, cap)?;
    for (j, rho) in subsets {
        for i in 0..g.len() {
            let v = g.element(i);
            if w.conjugate(r, &v)? == rho {
                return Ok((j, v));
            }
        }
    }
    Err(Error::HypothesisViolated("involution has no (-1)-form".into()))
}

/// Compares the normalizer of `<J>` with `<J> x <J^perp>`, where `J^perp` is
/// the set of generators outside `J` commuting with all of `J`.
pub fn verify_normalizer_formula(w: &CoxeterGroup, j: GenSet, cap: usize) -> Result<VerificationReport, Error> {
    let m = w.matrix();
    for s in m.all().difference(j).iter() {
        let finite = w.enumerate(j.with(s), cap).is_ok();
        let commutes = j.iter().all(|t| m.order(s, t) == Order::Finite(2));
        if finite && !commutes {
            return Err(Error::HypothesisViolated(format!(
                "<{{{}}} + J> is finite but {} does not commute with J",
                m.name(s),
                m.name(s)
            )));
        }
    }
    let perp: GenSet =
        m.all().difference(j).iter().filter(|&t| j.iter().all(|u| m.order(t, u) == Order::Finite(2))).collect();
    let g = w.enumerate(m.all(), cap)?;
    let mut report = VerificationReport {
        claim: format!("N(<{{{}}}>) = <J> x <J^perp>", m.names_of(j).join(", ")),
        status: Status::Verified,
        evidence: vec![("group order".into(), g.len() as u64)],
    };
    let mut normalizer = BTreeSet::new();
    for i in 0..g.len() {
        let x = g.element(i);
        let mut normalizes = true;
        for t in j.iter() {
            if !w.conjugate(&w.generator(t)?, &x)?.support().is_subset(j) {
                normalizes = false;
                break;
            }
        }
        if normalizes {
            normalizer.insert(x);
        }
    }
    let mut product = BTreeSet::new();
    let gj = w.enumerate(j, cap)?;
    let gp = w.enumerate(perp, cap)?;
    for a in gj.elements() {
        for b in gp.elements() {
            product.insert(w.multiply(&a, &b)?);
        }
    }
    report.evidence.push(("normalizer".into(), normalizer.len() as u64));
    report.evidence.push(("product".into(), product.len() as u64));
    if normalizer != product {
        let witness = normalizer.symmetric_difference(&product).next().expect("sets differ");
        return Ok(report.refute(format!("{} lies in exactly one side", w.format(witness))));
    }
    Ok(report)
}
