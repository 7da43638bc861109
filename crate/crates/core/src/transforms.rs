//! Rewrites of the generating set that witness a non-intrinsic reflection:
//! s-translation, diagram twist and blow-down.
//!
//! A [`GeneratingSet`] lists the new generators as reduced words over the
//! old ones and carries the order of every product of two of them. Finite
//! orders are found by search; infinite orders are only recorded when one of
//! the two certificate rules applies:
//!
//! * `R1`: the pair is conjugate, by one element, to a pair of generators
//!   `u, v` with `m_uv = inf`;
//! * `R2`: the pair is conjugate to `(s r, u)` with `r` an involution of
//!   `<s^perp>` and `u` in `s^inf`.
//!
//! Everything else that is not settled by the search is `AboveCap`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::SphericalType;
use crate::error::Error;
use crate::intrinsic::{
    build_context, check_bdg1, check_bdg2, find_blowdown_generators, infinity_set, s_components, BlowDownCandidate,
};
use crate::matrix::{CoxeterMatrix, Gen, GenSet, Order};
use crate::words::{CoxeterGroup, Element, InfinityRule, OrderResult};
use crate::Caps;

/// How a new generator was built from the old ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    /// An old generator.
    Generator(Gen),
    /// `s r` with `r` in `<s^perp>`.
    STimes(Element),
    /// `g^-1 u g` for an old generator `u`.
    Conjugate { base: Gen, by: Element },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    STranslation { s: Gen, component: GenSet },
    DiagramTwist { s: Gen, a: Gen, b: Gen, twisted: GenSet },
    BlowDown { s: Gen, a: Gen, b: Gen, component: GenSet },
}

/// Facts showing that `s` is not a reflection for the new generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonMembership {
    pub s: Gen,
    /// Value of the parity character of `s` on each new generator.
    pub parities: Vec<i8>,
    /// Whether `s rho` is a reflection of `<{s} + s^perp>`; `false` is what
    /// keeps `s` out of the new reflections.
    pub s_rho_is_reflection: bool,
}

/// A candidate Coxeter generating set given by words over the ambient
/// generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSet {
    pub ambient: CoxeterMatrix,
    pub names: Vec<String>,
    pub words: Vec<Element>,
    pub shapes: Vec<Shape>,
    /// Row-major, `names.len()` squared; the diagonal is `Finite(1)`.
    pub derived: Vec<OrderResult>,
    pub provenance: Provenance,
    pub non_membership: Option<NonMembership>,
}

impl GeneratingSet {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn entry(&self, i: usize, j: usize) -> OrderResult {
        self.derived[i * self.len() + j]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The derived Coxeter matrix, when no entry is left undecided.
    pub fn to_matrix(&self) -> Option<CoxeterMatrix> {
        let mut m = CoxeterMatrix::new(&self.names, Order::Finite(2)).ok()?;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let o = match self.entry(i, j) {
                    OrderResult::Finite(k) => Order::Finite(k),
                    OrderResult::Infinite(_) => Order::Infinite,
                    OrderResult::AboveCap(_) => return None,
                };
                m.set(Gen(i as u8), Gen(j as u8), o).ok()?;
            }
        }
        Some(m)
    }

    /// Words of the new generators rewritten over the generators of the
    /// presentation `base` was built from, when `self.ambient` is the
    /// matrix produced alongside `base`.
    pub fn words_through(&self, base: &GeneratingSet) -> Vec<Vec<Gen>> {
        self.words
            .iter()
            .map(|w| w.normal_form().iter().flat_map(|g| base.words[g.index()].normal_form().iter().copied()).collect())
            .collect()
    }
}

fn fresh_name(taken: &[String], base: &str) -> String {
    if !taken.iter().any(|n| n == base) {
        return base.into();
    }
    (2..).map(|i| format!("{base}_{i}")).find(|n| !taken.iter().any(|t| t == n)).expect("unbounded")
}

/// Checks the hypotheses of the certificate rules for the pair `(x, y)`.
pub fn certify_infinite(w: &CoxeterGroup, s: Gen, x: &Shape, y: &Shape) -> Result<Option<InfinityRule>, Error> {
    let m = w.matrix();
    let (perp, inf) = crate::diagram::neighborhoods(m, s)?;
    let as_generator = |e: &Element| match e.normal_form() {
        [g] => Some(*g),
        _ => None,
    };
    let word_of = |sh: &Shape| -> Result<Element, Error> {
        match sh {
            Shape::Generator(g) => w.generator(*g),
            Shape::STimes(r) => w.multiply(&w.generator(s)?, r),
            Shape::Conjugate { base, by } => w.conjugate(&w.generator(*base)?, by),
        }
    };
    for (p, q) in [(x, y), (y, x)] {
        match p {
            Shape::Generator(u) => {
                if let Some(v) = as_generator(&word_of(q)?) {
                    if m.order(*u, v) == Order::Infinite {
                        return Ok(Some(InfinityRule::MatrixEntry));
                    }
                }
            }
            Shape::Conjugate { base, by } => {
                // g q g^-1 must be a generator v with m(base, v) = inf
                let g_inv = w.invert(by)?;
                let moved = w.conjugate(&word_of(q)?, &g_inv)?;
                if let Some(v) = as_generator(&moved) {
                    if m.order(*base, v) == Order::Infinite {
                        return Ok(Some(InfinityRule::MatrixEntry));
                    }
                }
            }
            Shape::STimes(r) => {
                let r_ok = !r.is_identity() && r.support().is_subset(perp) && w.is_involution(r)?;
                if !r_ok {
                    continue;
                }
                let q_ok = match q {
                    Shape::Generator(u) => inf.contains(*u),
                    Shape::Conjugate { base, by } => inf.contains(*base) && by.support().is_subset(perp),
                    Shape::STimes(_) => false,
                };
                if q_ok {
                    return Ok(Some(InfinityRule::PerpInvolution));
                }
            }
        }
    }
    Ok(None)
}

fn derive_entries(w: &CoxeterGroup, s: Gen, words: &[Element], shapes: &[Shape], caps: &Caps) -> Result<Vec<OrderResult>, Error> {
    let n = words.len();
    let mut out = vec![OrderResult::Finite(1); n * n];
    for i in 0..n {
        for j in i + 1..n {
            let entry = match (&shapes[i], &shapes[j]) {
                (Shape::Generator(u), Shape::Generator(v)) => match w.matrix().order(*u, *v) {
                    Order::Finite(k) => OrderResult::Finite(k),
                    Order::Infinite => OrderResult::Infinite(InfinityRule::MatrixEntry),
                },
                (x, y) => match certify_infinite(w, s, x, y)? {
                    Some(rule) => OrderResult::Infinite(rule),
                    None => w.product_order(&words[i], &words[j], caps.order_cap)?,
                },
            };
            out[i * n + j] = entry;
            out[j * n + i] = entry;
        }
    }
    Ok(out)
}

fn non_membership(w: &CoxeterGroup, s: Gen, words: &[Element], s_rho: &Element) -> Result<NonMembership, Error> {
    let (perp, _) = crate::diagram::neighborhoods(w.matrix(), s)?;
    let parities = words.iter().map(|x| w.parity_character(s, x.normal_form())).collect::<Result<_, _>>()?;
    let s_rho_is_reflection = w.is_reflection_in(perp.with(s), s_rho)?;
    Ok(NonMembership { s, parities, s_rho_is_reflection })
}

/// `rho_C` and the permutation `c -> rho c rho` of `C`, by enumeration.
fn longest_and_opposition(w: &CoxeterGroup, c: GenSet, caps: &Caps) -> Result<(Element, Vec<(Gen, Gen)>), Error> {
    let rho = w.longest_element(c, caps.max_enum)?;
    let mut sigma = Vec::new();
    for g in c.iter() {
        let image = w.conjugate(&w.generator(g)?, &rho)?;
        match image.normal_form() {
            [h] => sigma.push((g, *h)),
            _ => return Err(Error::HypothesisViolated("longest element does not permute the generators".into())),
        }
    }
    Ok((rho, sigma))
}

/// Replaces `s` by `s rho_C` for an `s`-component `C` of `(-1)`-type.
pub fn s_translation(m: &CoxeterMatrix, s: Gen, component: GenSet, caps: &Caps) -> Result<GeneratingSet, Error> {
    let ctx = build_context(m, s)?;
    let is_minus_one_component =
        s_components(&ctx).iter().any(|&(members, t)| members == component && t.is_minus_one_type());
    if !is_minus_one_component {
        return Err(Error::ComponentNotMinusOneType);
    }
    let w = CoxeterGroup::new(m.clone());
    let rho = w.longest_element(component, caps.max_enum)?;
    let s_rho = w.multiply(&w.generator(s)?, &rho)?;
    let mut names = Vec::new();
    let mut words = Vec::new();
    let mut shapes = Vec::new();
    for g in m.gens() {
        if g == s {
            names.push(fresh_name(m.names(), &format!("{}_rho", m.name(s))));
            words.push(s_rho.clone());
            shapes.push(Shape::STimes(rho.clone()));
        } else {
            names.push(m.name(g).into());
            words.push(w.generator(g)?);
            shapes.push(Shape::Generator(g));
        }
    }
    let derived = derive_entries(&w, s, &words, &shapes, caps)?;
    let non_membership = Some(non_membership(&w, s, &words, &s_rho)?);
    Ok(GeneratingSet {
        ambient: m.clone(),
        names,
        words,
        shapes,
        derived,
        provenance: Provenance::STranslation { s, component },
        non_membership,
    })
}

fn validate(m: &CoxeterMatrix, s: Gen, cand: &BlowDownCandidate, caps: &Caps) -> Result<(), Error> {
    let ctx = build_context(m, s)?;
    let fresh = check_bdg1(&ctx, cand.a, caps).map_err(|r| Error::CandidateInvalid(format!("{r:?}")))?;
    if fresh.b != cand.b || fresh.component != cand.component {
        return Err(Error::CandidateInvalid("b or the component does not match the matrix".into()));
    }
    if !check_bdg2(&ctx, cand.a, cand.b).holds() {
        return Err(Error::CandidateInvalid("second blowing-down condition fails".into()));
    }
    Ok(())
}

/// The set `K` of the twist: generators of `s^inf` joined by finite-order
/// steps inside `s^inf` to one of finite order with `b`.
pub fn twist_set(m: &CoxeterMatrix, s: Gen, b: Gen) -> Result<GenSet, Error> {
    let (_, inf) = crate::diagram::neighborhoods(m, s)?;
    let b_inf = infinity_set(m, b);
    let mut k = inf.difference(b_inf);
    loop {
        let grown: GenSet = inf.difference(k).iter().filter(|&u| k.iter().any(|t| m.order(t, u).is_finite())).collect();
        if grown.is_empty() {
            return Ok(k);
        }
        k = k.union(grown);
    }
}

/// Conjugates the part `K` of `s^inf` seen by `b` through `rho_C`, making the
/// candidate proper. Returns the matrix of the new generating set together
/// with the set itself. A proper candidate gives the identity twist.
pub fn diagram_twist(
    m: &CoxeterMatrix,
    s: Gen,
    cand: &BlowDownCandidate,
    caps: &Caps,
) -> Result<(CoxeterMatrix, GeneratingSet), Error> {
    validate(m, s, cand, caps)?;
    let k = if cand.proper { GenSet::EMPTY } else { twist_set(m, s, cand.b)? };
    if !k.is_subset(infinity_set(m, cand.a)) {
        return Err(Error::CandidateInvalid("twisted set is not contained in a^inf".into()));
    }
    let w = CoxeterGroup::new(m.clone());
    let (rho, sigma) = longest_and_opposition(&w, cand.component, caps)?;
    let sigma_of = |c: Gen| sigma.iter().find(|(g, _)| *g == c).map(|(_, h)| *h).expect("c in component");

    let mut names: Vec<String> = m.names().to_vec();
    let mut words = Vec::new();
    let mut shapes = Vec::new();
    for g in m.gens() {
        if k.contains(g) {
            let fresh = fresh_name(&names, &format!("{}_tw", m.name(g)));
            names[g.index()] = fresh;
            words.push(w.conjugate(&w.generator(g)?, &rho)?);
            shapes.push(Shape::Conjugate { base: g, by: rho.clone() });
        } else {
            words.push(w.generator(g)?);
            shapes.push(Shape::Generator(g));
        }
    }

    let mut twisted = CoxeterMatrix::new(&names, Order::Finite(2))?;
    for x in m.gens() {
        for y in m.gens() {
            if x == y {
                continue;
            }
            let o = match (k.contains(x), cand.component.contains(y)) {
                (true, true) => m.order(x, sigma_of(y)),
                _ => match (cand.component.contains(x), k.contains(y)) {
                    (true, true) => m.order(y, sigma_of(x)),
                    _ => m.order(x, y),
                },
            };
            twisted.set(x, y, o)?;
        }
    }

    let derived = derive_entries(&w, s, &words, &shapes, caps)?;
    let ctx = build_context(&twisted, s)?;
    let now_proper = check_bdg1(&ctx, cand.a, caps).is_ok_and(|c| c.proper && c.b == cand.b);
    if !now_proper {
        return Err(Error::CandidateInvalid("the twist did not make the candidate proper".into()));
    }
    let set = GeneratingSet {
        ambient: m.clone(),
        names,
        words,
        shapes,
        derived,
        provenance: Provenance::DiagramTwist { s, a: cand.a, b: cand.b, twisted: k },
        non_membership: None,
    };
    Ok((twisted, set))
}

/// `R = (S - {s, b}) + {s rho_C}` for a proper blowing-down generator.
pub fn blow_down(m: &CoxeterMatrix, s: Gen, cand: &BlowDownCandidate, caps: &Caps) -> Result<GeneratingSet, Error> {
    let (_, inf) = crate::diagram::neighborhoods(m, s)?;
    if !inf.is_subset(infinity_set(m, cand.b)) {
        return Err(Error::CandidateNotProper);
    }
    validate(m, s, cand, caps)?;
    let w = CoxeterGroup::new(m.clone());
    let (rho, _) = longest_and_opposition(&w, cand.component, caps)?;
    let s_rho = w.multiply(&w.generator(s)?, &rho)?;
    let mut names = Vec::new();
    let mut words = Vec::new();
    let mut shapes = Vec::new();
    for g in m.gens() {
        if g == s {
            names.push(fresh_name(m.names(), &format!("{}_rho", m.name(s))));
            words.push(s_rho.clone());
            shapes.push(Shape::STimes(rho.clone()));
        } else if g != cand.b {
            names.push(m.name(g).into());
            words.push(w.generator(g)?);
            shapes.push(Shape::Generator(g));
        }
    }
    let derived = derive_entries(&w, s, &words, &shapes, caps)?;
    let non_membership = Some(non_membership(&w, s, &words, &s_rho)?);
    Ok(GeneratingSet {
        ambient: m.clone(),
        names,
        words,
        shapes,
        derived,
        provenance: Provenance::BlowDown { s, a: cand.a, b: cand.b, component: cand.component },
        non_membership,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Elimination {
    Translation(GeneratingSet),
    /// `twist` is present when the candidate had to be made proper first; the
    /// blow-down is then taken in the twisted presentation.
    BlowDown { twist: Option<(CoxeterMatrix, GeneratingSet)>, result: GeneratingSet },
    NoneAvailable,
}

/// A generating set in which `s` is not a reflection, when the diagram
/// offers one.
pub fn eliminate_reflection(m: &CoxeterMatrix, s: Gen, caps: &Caps) -> Result<Elimination, Error> {
    let ctx = build_context(m, s)?;
    if let Some(&(component, _)) = s_components(&ctx).iter().find(|(_, t)| t.is_minus_one_type()) {
        return Ok(Elimination::Translation(s_translation(m, s, component, caps)?));
    }
    let candidates = find_blowdown_generators(&ctx, caps);
    let Some(cand) = candidates.iter().find(|c| c.proper).or(candidates.first()) else {
        return Ok(Elimination::NoneAvailable);
    };
    if cand.proper {
        return Ok(Elimination::BlowDown { twist: None, result: blow_down(m, s, cand, caps)? });
    }
    let (twisted, set) = diagram_twist(m, s, cand, caps)?;
    let ctx1 = build_context(&twisted, s)?;
    let cand1 = check_bdg1(&ctx1, cand.a, caps).map_err(|r| Error::CandidateInvalid(format!("{r:?}")))?;
    let result = blow_down(&twisted, s, &cand1, caps)?;
    Ok(Elimination::BlowDown { twist: Some((twisted, set)), result })
}

/// Ways an irreducible finite Coxeter group splits as a direct product
/// `A x B` with `1 < |A| <= |B|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompositionCase {
    /// `I2(4k+2) = Z2 x I2(2k+1)`.
    CaseI { b_type: SphericalType },
    /// `C_{2k+1} = Z2 x D_{2k+1}`, with `B` generated either by a copy of
    /// the `D` generators or by their products with the center.
    CasesDAndDBar { b_type: SphericalType },
    /// `E7` and `H3`: the center splits off but the complement is not a
    /// Coxeter group.
    CenterSplit,
    NoDecomposition,
}

pub fn decomposition_case(t: SphericalType) -> DecompositionCase {
    match t {
        SphericalType::E7 | SphericalType::H3 => DecompositionCase::CenterSplit,
        SphericalType::C(n) if n % 2 == 1 => DecompositionCase::CasesDAndDBar {
            b_type: if n == 3 { SphericalType::A(3) } else { SphericalType::D(n) },
        },
        _ => match t.dihedral_label() {
            Some(m) if m % 4 == 2 => DecompositionCase::CaseI { b_type: SphericalType::dihedral(m / 2) },
            _ => DecompositionCase::NoDecomposition,
        },
    }
}
