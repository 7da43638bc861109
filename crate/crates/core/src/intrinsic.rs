//! Decision procedure for right-angled generators.
//!
//! A generator `s` is right-angled when every `m_st` with `t != s` is `2` or
//! infinite. Such an `s` is an intrinsic reflection exactly when every
//! `s`-component (irreducible spherical component of `s^perp`) has trivial
//! center and `s` has no blowing-down generator.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::{irreducible_components, neighborhoods, Classification, ComponentDecomposition, SphericalType};
use crate::error::Error;
use crate::matrix::{CoxeterMatrix, Gen, GenSet, Order};
use crate::words::CoxeterGroup;
use crate::Caps;

/// `S = {s} + s^perp + s^inf` for a right-angled `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightAngledContext {
    pub matrix: CoxeterMatrix,
    pub s: Gen,
    pub s_perp: GenSet,
    pub s_infinity: GenSet,
    pub components_of_perp: ComponentDecomposition,
}

pub fn build_context(m: &CoxeterMatrix, s: Gen) -> Result<RightAngledContext, Error> {
    if s.index() >= m.rank() {
        return Err(Error::UnknownGenerator(alloc::format!("#{}", s.0)));
    }
    if let Some(t) = m.gens().find(|&t| t != s && !matches!(m.order(s, t), Order::Finite(2) | Order::Infinite)) {
        return Err(Error::NotRightAngled { s: m.name(s).into(), t: m.name(t).into(), order: m.order(s, t) });
    }
    let (s_perp, s_infinity) = neighborhoods(m, s)?;
    let components_of_perp = irreducible_components(m, s_perp)?;
    Ok(RightAngledContext { matrix: m.clone(), s, s_perp, s_infinity, components_of_perp })
}

/// Irreducible spherical components of `s^perp`.
pub fn s_components(ctx: &RightAngledContext) -> Vec<(GenSet, SphericalType)> {
    ctx.components_of_perp
        .components
        .iter()
        .filter_map(|c| c.class.spherical().map(|t| (c.members, t)))
        .collect()
}

/// Generators with infinite order product with `x`.
pub fn infinity_set(m: &CoxeterMatrix, x: Gen) -> GenSet {
    m.gens().filter(|&t| m.order(x, t) == Order::Infinite).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowDownCandidate {
    pub a: Gen,
    pub b: Gen,
    pub component: GenSet,
    pub component_type: SphericalType,
    /// `s^inf` is contained in `b^inf`.
    pub proper: bool,
    /// `b` was read off an enumeration of the component rather than the
    /// diagram symmetry.
    pub enumerated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bdg1Rejection {
    NotInPerp,
    NotSpherical,
    TypeMismatch(SphericalType),
    /// `rho a rho = a`.
    FixedByLongest,
}

/// Image of `a` under conjugation by the longest element of `<C>`, predicted
/// from the diagram: the opposition involution swaps the two generators of an
/// odd dihedral group and the two short fork ends of `D_{2k+1}`.
fn predicted_opposite(m: &CoxeterMatrix, c: GenSet, t: SphericalType, a: Gen) -> Gen {
    let members: Vec<Gen> = c.iter().collect();
    if t.odd_dihedral_k().is_some() {
        return if members[0] == a { members[1] } else { members[0] };
    }
    let degree = |g: Gen| members.iter().filter(|&&h| h != g && m.order(g, h) != Order::Finite(2)).count();
    // the branch node: the middle of A3, the degree-3 node otherwise
    let branch = *members.iter().find(|&&g| degree(g) == if members.len() == 3 { 2 } else { 3 }).expect("branch node");
    let ends: Vec<Gen> =
        members.iter().copied().filter(|&g| degree(g) == 1 && m.order(g, branch) != Order::Finite(2)).collect();
    match ends[..] {
        [x, y] if a == x => y,
        [x, y] if a == y => x,
        _ => a,
    }
}

/// Checks the first blowing-down condition for `a`: the component `C` of `a`
/// in `s^perp` has type `I2(2k+1)` or `D_{2k+1}` and `b = rho_C a rho_C != a`.
///
/// `b` is computed by enumerating `<C>` when it has at most `caps.max_enum`
/// elements and from the diagram symmetry otherwise.
pub fn check_bdg1(ctx: &RightAngledContext, a: Gen, caps: &Caps) -> Result<BlowDownCandidate, Bdg1Rejection> {
    if !ctx.s_perp.contains(a) {
        return Err(Bdg1Rejection::NotInPerp);
    }
    let comp = ctx.components_of_perp.component_of(a).expect("a lies in a component");
    let t = match comp.class {
        Classification::Spherical(t) => t,
        Classification::NonSpherical => return Err(Bdg1Rejection::NotSpherical),
    };
    if !t.matches_blow_down_pattern() {
        return Err(Bdg1Rejection::TypeMismatch(t));
    }
    let fits = t.group_order().is_some_and(|n| n <= caps.max_enum as u64);
    let (b, enumerated) = if fits {
        let w = CoxeterGroup::new(ctx.matrix.clone());
        let rho = w.longest_element(comp.members, caps.max_enum).expect("order within cap");
        let image = w.generator(a).and_then(|x| w.conjugate(&x, &rho)).expect("letters belong to the matrix");
        let b = match image.normal_form() {
            [b] => *b,
            _ => unreachable!("conjugation by the longest element permutes the generators"),
        };
        (b, true)
    } else {
        (predicted_opposite(&ctx.matrix, comp.members, t, a), false)
    };
    if b == a {
        return Err(Bdg1Rejection::FixedByLongest);
    }
    let proper = ctx.s_infinity.is_subset(infinity_set(&ctx.matrix, b));
    Ok(BlowDownCandidate { a, b, component: comp.members, component_type: t, proper, enumerated })
}

/// Outcome of the second blowing-down condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bdg2Outcome {
    /// Each component of the finite-order graph on `s^inf`, paired with a
    /// generator `x` in `{a, b}` such that the component lies in `x^inf`.
    Holds(Vec<(GenSet, Gen)>),
    /// A walk `u_0, ..., u_n` of finite-order steps whose vertices lie in
    /// neither `a^inf` nor `b^inf`.
    Fails(Vec<Gen>),
}

impl Bdg2Outcome {
    pub fn holds(&self) -> bool {
        matches!(self, Bdg2Outcome::Holds(_))
    }
}

/// Second blowing-down condition, as a containment test on the components of
/// the graph on `s^inf` whose edges are the pairs of finite order.
pub fn check_bdg2(ctx: &RightAngledContext, a: Gen, b: Gen) -> Bdg2Outcome {
    let m = &ctx.matrix;
    let (a_inf, b_inf) = (infinity_set(m, a), infinity_set(m, b));
    let finite_edge = |o: Order| o.is_finite();
    let mut good = Vec::new();
    for k in crate::diagram::components_of(m, ctx.s_infinity, finite_edge) {
        if k.is_subset(a_inf) {
            good.push((k, a));
        } else if k.is_subset(b_inf) {
            good.push((k, b));
        } else {
            let p = k.difference(a_inf).first().expect("k is not inside a^inf");
            let q = k.difference(b_inf).first().expect("k is not inside b^inf");
            let (p, q) = if p <= q { (p, q) } else { (q, p) };
            return Bdg2Outcome::Fails(finite_path(m, k, p, q));
        }
    }
    Bdg2Outcome::Holds(good)
}

/// Shortest walk from `p` to `q` inside `k` along finite-order pairs.
fn finite_path(m: &CoxeterMatrix, k: GenSet, p: Gen, q: Gen) -> Vec<Gen> {
    let mut prev = [None::<Gen>; crate::matrix::MAX_RANK];
    let mut seen = GenSet::single(p);
    let mut queue = VecDeque::from([p]);
    while let Some(u) = queue.pop_front() {
        if u == q {
            break;
        }
        for v in k.difference(seen).iter() {
            if m.order(u, v).is_finite() {
                seen.insert(v);
                prev[v.index()] = Some(u);
                queue.push_back(v);
            }
        }
    }
    let mut path = vec![q];
    let mut cur = q;
    while let Some(u) = prev[cur.index()] {
        path.push(u);
        cur = u;
    }
    path.reverse();
    path
}

/// Every `a` in `s^perp` satisfying both blowing-down conditions.
pub fn find_blowdown_generators(ctx: &RightAngledContext, caps: &Caps) -> Vec<BlowDownCandidate> {
    ctx.s_perp
        .iter()
        .filter_map(|a| check_bdg1(ctx, a, caps).ok())
        .filter(|c| check_bdg2(ctx, c.a, c.b).holds())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reason {
    MinusOneComponent { component: GenSet, component_type: SphericalType },
    BlowDownGenerator(BlowDownCandidate),
    AllChecksPassed,
}

/// Facts behind a verdict, each checkable from the matrix alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Partition { s_perp: GenSet, s_infinity: GenSet },
    Component { members: GenSet, class: Classification },
    Bdg1Rejected { a: Gen, reason: Bdg1Rejection },
    Bdg1Accepted(BlowDownCandidate),
    Bdg2 { a: Gen, b: Gen, outcome: Bdg2Outcome },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntrinsicVerdict {
    pub s: Gen,
    pub reason: Reason,
    pub certificates: Vec<Certificate>,
}

impl IntrinsicVerdict {
    pub fn is_intrinsic(&self) -> bool {
        self.reason == Reason::AllChecksPassed
    }

    /// One line per certificate, with generator names from `m`.
    pub fn describe(&self, m: &CoxeterMatrix) -> Vec<String> {
        let set = |g: GenSet| alloc::format!("{{{}}}", m.names_of(g).join(", "));
        self.certificates
            .iter()
            .map(|c| match c {
                Certificate::Partition { s_perp, s_infinity } => {
                    alloc::format!("perp = {}, inf = {}", set(*s_perp), set(*s_infinity))
                }
                Certificate::Component { members, class } => alloc::format!("component {} of type {class}", set(*members)),
                Certificate::Bdg1Rejected { a, reason } => alloc::format!("{} fails BDG1: {reason:?}", m.name(*a)),
                Certificate::Bdg1Accepted(c) => alloc::format!(
                    "{} passes BDG1 in {} of type {} with b = {}{}",
                    m.name(c.a),
                    set(c.component),
                    c.component_type,
                    m.name(c.b),
                    if c.proper { ", proper" } else { "" }
                ),
                Certificate::Bdg2 { a, b, outcome: Bdg2Outcome::Holds(parts) } => {
                    let parts: Vec<String> =
                        parts.iter().map(|(k, x)| alloc::format!("{} in {}^inf", set(*k), m.name(*x))).collect();
                    if parts.is_empty() {
                        alloc::format!("BDG2 holds for ({}, {}): inf is empty", m.name(*a), m.name(*b))
                    } else {
                        alloc::format!("BDG2 holds for ({}, {}): {}", m.name(*a), m.name(*b), parts.join("; "))
                    }
                }
                Certificate::Bdg2 { a, b, outcome: Bdg2Outcome::Fails(path) } => alloc::format!(
                    "BDG2 fails for ({}, {}): path {}",
                    m.name(*a),
                    m.name(*b),
                    m.word_to_string(path)
                ),
            })
            .collect()
    }
}

/// Decides whether the right-angled generator `s` is an intrinsic reflection.
pub fn decide_intrinsic(m: &CoxeterMatrix, s: Gen, caps: &Caps) -> Result<IntrinsicVerdict, Error> {
    let ctx = build_context(m, s)?;
    let mut certificates = vec![Certificate::Partition { s_perp: ctx.s_perp, s_infinity: ctx.s_infinity }];
    certificates.extend(
        ctx.components_of_perp.components.iter().map(|c| Certificate::Component { members: c.members, class: c.class }),
    );
    let verdict = |reason, certificates| Ok(IntrinsicVerdict { s, reason, certificates });

    if let Some((component, component_type)) = s_components(&ctx).into_iter().find(|(_, t)| t.is_minus_one_type()) {
        return verdict(Reason::MinusOneComponent { component, component_type }, certificates);
    }

    let mut found = None;
    for a in ctx.s_perp.iter() {
        match check_bdg1(&ctx, a, caps) {
            Err(reason) => certificates.push(Certificate::Bdg1Rejected { a, reason }),
            Ok(candidate) => {
                let outcome = check_bdg2(&ctx, candidate.a, candidate.b);
                let holds = outcome.holds();
                certificates.push(Certificate::Bdg1Accepted(candidate.clone()));
                certificates.push(Certificate::Bdg2 { a: candidate.a, b: candidate.b, outcome });
                if holds && found.is_none() {
                    found = Some(candidate);
                }
            }
        }
    }
    match found {
        Some(c) => verdict(Reason::BlowDownGenerator(c), certificates),
        None => verdict(Reason::AllChecksPassed, certificates),
    }
}

/// Intrinsic-ness in a right-angled system: `s` is intrinsic iff `s^perp` has
/// no isolated vertex, i.e. `<s^perp>` has no direct factor of type `A1`.
pub fn right_angled_system_criterion(m: &CoxeterMatrix, s: Gen) -> Result<bool, Error> {
    for x in m.gens() {
        for y in m.gens() {
            if x != y && !matches!(m.order(x, y), Order::Finite(2) | Order::Infinite) {
                return Err(Error::SystemNotRightAngled(m.name(x).into()));
            }
        }
    }
    let (perp, _) = neighborhoods(m, s)?;
    let isolated = perp.iter().any(|t| perp.iter().all(|u| u == t || m.order(t, u) == Order::Finite(2)));
    Ok(!isolated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Order::{Finite, Infinite};

    fn mat(names: &[&str], edges: &[(&str, &str, Order)]) -> CoxeterMatrix {
        CoxeterMatrix::from_edges(names, edges).unwrap()
    }

    #[test]
    fn context_examples() {
        let m = mat(&["s", "t", "u"], &[("s", "u", Infinite)]);
        let ctx = build_context(&m, Gen(0)).unwrap();
        assert_eq!(ctx.s_perp, GenSet::single(Gen(1)));
        assert_eq!(ctx.s_infinity, GenSet::single(Gen(2)));

        let m = mat(&["s", "t"], &[("s", "t", Finite(3))]);
        assert!(matches!(build_context(&m, Gen(0)), Err(Error::NotRightAngled { .. })));

        let m = mat(&["s"], &[]);
        let ctx = build_context(&m, Gen(0)).unwrap();
        assert!(ctx.s_perp.is_empty() && ctx.s_infinity.is_empty());
    }

    #[test]
    fn s_component_examples() {
        let m = mat(&["s", "a", "b"], &[("a", "b", Finite(3))]);
        let ctx = build_context(&m, Gen(0)).unwrap();
        assert_eq!(s_components(&ctx), vec![(GenSet(0b110), SphericalType::A(2))]);

        let m = mat(&["s", "a", "b"], &[("a", "b", Infinite)]);
        assert!(s_components(&build_context(&m, Gen(0)).unwrap()).is_empty());

        let m = mat(&["s", "t"], &[]);
        assert_eq!(s_components(&build_context(&m, Gen(0)).unwrap()), vec![(GenSet(0b10), SphericalType::A(1))]);
    }

    #[test]
    fn bdg1_examples() {
        let caps = Caps::default();
        let m = mat(&["s", "a", "b"], &[("a", "b", Finite(5))]);
        let ctx = build_context(&m, Gen(0)).unwrap();
        assert_eq!(check_bdg1(&ctx, Gen(1), &caps).unwrap().b, Gen(2));
        assert_eq!(check_bdg1(&ctx, Gen(2), &caps).unwrap().b, Gen(1));

        let m = mat(
            &["s", "c1", "c2", "c3", "a", "b"],
            &[("c1", "c2", Finite(3)), ("c2", "c3", Finite(3)), ("a", "c3", Finite(3)), ("b", "c3", Finite(3))],
        );
        let ctx = build_context(&m, Gen(0)).unwrap();
        let a = m.gen("a").unwrap();
        let cand = check_bdg1(&ctx, a, &caps).unwrap();
        assert_eq!(cand.b, m.gen("b").unwrap());
        assert_eq!(cand.component_type, SphericalType::D(5));
        for spine in ["c1", "c2", "c3"] {
            assert_eq!(check_bdg1(&ctx, m.gen(spine).unwrap(), &caps), Err(Bdg1Rejection::FixedByLongest));
        }

        let m = mat(&["s", "a", "b", "c"], &[("a", "b", Finite(3)), ("b", "c", Finite(4))]);
        let ctx = build_context(&m, Gen(0)).unwrap();
        assert_eq!(check_bdg1(&ctx, Gen(1), &caps), Err(Bdg1Rejection::TypeMismatch(SphericalType::C(3))));
    }

    #[test]
    fn prediction_matches_enumeration() {
        let small = Caps::default();
        let tiny = Caps { max_enum: 1, ..Caps::default() };
        for t in [SphericalType::A(2), SphericalType::A(3), SphericalType::D(5), SphericalType::I2(7), SphericalType::D(7)] {
            let inner = t.matrix("c");
            let mut names = vec![String::from("s")];
            names.extend(inner.names().iter().cloned());
            let mut m = CoxeterMatrix::new(&names, Finite(2)).unwrap();
            for x in inner.gens() {
                for y in inner.gens() {
                    if x != y {
                        m.set(Gen(x.0 + 1), Gen(y.0 + 1), inner.order(x, y)).unwrap();
                    }
                }
            }
            let ctx = build_context(&m, Gen(0)).unwrap();
            for a in ctx.s_perp.iter() {
                let by_table = check_bdg1(&ctx, a, &tiny).map(|c| c.b);
                if t != SphericalType::D(7) {
                    assert_eq!(check_bdg1(&ctx, a, &small).map(|c| c.b), by_table, "{t} {a:?}");
                }
                if let Ok(c) = check_bdg1(&ctx, a, &tiny) {
                    assert!(!c.enumerated);
                }
            }
            assert_eq!(ctx.s_perp.iter().filter(|&a| check_bdg1(&ctx, a, &tiny).is_ok()).count(), 2, "{t}");
        }
    }

    #[test]
    fn bdg2_examples() {
        let m = mat(&["s", "a", "b"], &[("a", "b", Finite(3))]);
        let ctx = build_context(&m, Gen(0)).unwrap();
        assert_eq!(check_bdg2(&ctx, Gen(1), Gen(2)), Bdg2Outcome::Holds(vec![]));

        let m = mat(&["s", "a", "b", "u"], &[("a", "b", Finite(3)), ("s", "u", Infinite), ("a", "u", Infinite), ("b", "u", Finite(3))]);
        let ctx = build_context(&m, Gen(0)).unwrap();
        assert_eq!(check_bdg2(&ctx, Gen(1), Gen(2)), Bdg2Outcome::Holds(vec![(GenSet::single(Gen(3)), Gen(1))]));

        let m = two_sided();
        let ctx = build_context(&m, Gen(0)).unwrap();
        let (a, b) = (m.gen("a").unwrap(), m.gen("b").unwrap());
        let (u, v) = (m.gen("u").unwrap(), m.gen("v").unwrap());
        assert_eq!(check_bdg2(&ctx, a, b), Bdg2Outcome::Fails(vec![u, v]));
    }

    fn two_sided() -> CoxeterMatrix {
        mat(
            &["s", "a", "b", "u", "v"],
            &[
                ("a", "b", Finite(3)),
                ("s", "u", Infinite),
                ("s", "v", Infinite),
                ("u", "v", Finite(3)),
                ("a", "u", Infinite),
                ("b", "u", Finite(3)),
                ("a", "v", Finite(3)),
                ("b", "v", Infinite),
            ],
        )
    }

    #[test]
    fn verdict_examples() {
        let caps = Caps::default();
        let m = mat(&["s", "t", "u"], &[("s", "u", Infinite), ("t", "u", Infinite)]);
        let v = decide_intrinsic(&m, Gen(0), &caps).unwrap();
        assert_eq!(
            v.reason,
            Reason::MinusOneComponent { component: GenSet::single(Gen(1)), component_type: SphericalType::A(1) }
        );

        let m = mat(
            &["s", "a", "b", "u"],
            &[("a", "b", Finite(3)), ("s", "u", Infinite), ("a", "u", Infinite), ("b", "u", Infinite)],
        );
        let v = decide_intrinsic(&m, Gen(0), &caps).unwrap();
        match v.reason {
            Reason::BlowDownGenerator(c) => assert_eq!((c.a, c.b, c.proper), (Gen(1), Gen(2), true)),
            other => panic!("{other:?}"),
        }
        let ctx = build_context(&m, Gen(0)).unwrap();
        assert_eq!(find_blowdown_generators(&ctx, &caps).len(), 2);

        let v = decide_intrinsic(&two_sided(), Gen(0), &caps).unwrap();
        assert!(v.is_intrinsic());
        assert!(!v.describe(&two_sided()).is_empty());
    }

    #[test]
    fn no_candidates_without_pattern() {
        let caps = Caps::default();
        let m = mat(&["s", "a", "b", "c"], &[("a", "b", Finite(3)), ("b", "c", Finite(4))]);
        assert!(find_blowdown_generators(&build_context(&m, Gen(0)).unwrap(), &caps).is_empty());
        let m = mat(&["s", "u"], &[("s", "u", Infinite)]);
        assert!(find_blowdown_generators(&build_context(&m, Gen(0)).unwrap(), &caps).is_empty());
    }

    #[test]
    fn right_angled_criterion_examples() {
        let m = mat(&["s", "t", "u"], &[("s", "u", Infinite), ("t", "u", Infinite)]);
        assert!(!right_angled_system_criterion(&m, Gen(0)).unwrap());
        let m = mat(&["s", "u"], &[("s", "u", Infinite)]);
        assert!(right_angled_system_criterion(&m, Gen(0)).unwrap());
        let m = mat(&["s", "t", "t2"], &[]);
        assert!(!right_angled_system_criterion(&m, Gen(0)).unwrap());
        let m = mat(&["s", "t", "t2"], &[("t", "t2", Infinite)]);
        assert!(right_angled_system_criterion(&m, Gen(0)).unwrap());
        let m = mat(&["s", "t"], &[("s", "t", Finite(3))]);
        assert!(matches!(right_angled_system_criterion(&m, Gen(0)), Err(Error::SystemNotRightAngled(_))));
    }
}
