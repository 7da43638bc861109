//! Structural analysis of Coxeter diagrams: irreducible components, the
//! classification of irreducible spherical components, and the lookup tables
//! built on top of it.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::matrix::{CoxeterMatrix, Gen, GenSet, Order};

/// Type of an irreducible spherical Coxeter system, in canonical form.
///
/// Coincidences are resolved towards the first name: `I2(3) = A2`,
/// `I2(4) = C2`, `D3 = A3`. `I2(m)` is only used for `m >= 5`, `C_n` for
/// `n >= 2`, `D_n` for `n >= 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SphericalType {
    A(u32),
    C(u32),
    D(u32),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    I2(u32),
}

impl SphericalType {
    /// Canonical type of the dihedral group of order `2m`.
    pub fn dihedral(m: u32) -> SphericalType {
        match m {
            3 => SphericalType::A(2),
            4 => SphericalType::C(2),
            _ => SphericalType::I2(m),
        }
    }

    pub fn rank(self) -> u32 {
        use SphericalType::*;
        match self {
            A(n) | C(n) | D(n) => n,
            E6 => 6,
            E7 => 7,
            E8 => 8,
            F4 | H4 => 4,
            H3 => 3,
            I2(_) => 2,
        }
    }

    /// Order of the group; `None` if it does not fit in a `u64`.
    pub fn group_order(self) -> Option<u64> {
        use SphericalType::*;
        let fact = |n: u32| (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k));
        match self {
            A(n) => fact(n + 1),
            C(n) => fact(n)?.checked_mul(1u64.checked_shl(n)?),
            D(n) => fact(n)?.checked_mul(1u64.checked_shl(n - 1)?),
            E6 => Some(51_840),
            E7 => Some(2_903_040),
            E8 => Some(696_729_600),
            F4 => Some(1_152),
            H3 => Some(120),
            H4 => Some(14_400),
            I2(m) => Some(2 * m as u64),
        }
    }

    /// Number of reflections, which is also the length of the longest element.
    pub fn reflection_count(self) -> u64 {
        use SphericalType::*;
        let n = self.rank() as u64;
        match self {
            A(_) => n * (n + 1) / 2,
            C(_) => n * n,
            D(_) => n * (n - 1),
            E6 => 36,
            E7 => 63,
            E8 => 120,
            F4 => 24,
            H3 => 15,
            H4 => 60,
            I2(m) => m as u64,
        }
    }

    /// Whether the longest element is central (equivalently, the center is
    /// nontrivial).
    pub fn is_minus_one_type(self) -> bool {
        use SphericalType::*;
        match self {
            A(n) => n == 1,
            C(_) => true,
            D(n) => n % 2 == 0,
            E6 => false,
            E7 | E8 | F4 | H3 | H4 => true,
            I2(m) => m % 2 == 0,
        }
    }

    /// The dihedral label when the type is a rank-two type, including the
    /// canonical aliases `A2` and `C2`.
    pub fn dihedral_label(self) -> Option<u32> {
        match self {
            SphericalType::A(2) => Some(3),
            SphericalType::C(2) => Some(4),
            SphericalType::I2(m) => Some(m),
            _ => None,
        }
    }

    /// `k >= 1` if the type is `I2(2k+1)` (with `A2 = I2(3)`).
    pub fn odd_dihedral_k(self) -> Option<u32> {
        self.dihedral_label().filter(|m| m % 2 == 1).map(|m| (m - 1) / 2)
    }

    /// `k >= 1` if the type is `D_{2k+1}` (with `A3 = D3`).
    pub fn odd_d_k(self) -> Option<u32> {
        match self {
            SphericalType::A(3) => Some(1),
            SphericalType::D(n) if n % 2 == 1 => Some((n - 1) / 2),
            _ => None,
        }
    }

    /// Types admitting a blowing-down generator: `I2(2k+1)` or `D_{2k+1}`,
    /// `k >= 1`.
    pub fn matches_blow_down_pattern(self) -> bool {
        self.odd_dihedral_k().is_some() || self.odd_d_k().is_some()
    }

    /// Whether every generator is an intrinsic reflection of the finite group.
    pub fn intrinsic_in_finite_group(self) -> bool {
        let trivial_center = !self.is_minus_one_type();
        let listed = matches!(self, SphericalType::A(1) | SphericalType::H3 | SphericalType::E7)
            || self.dihedral_label().is_some_and(|m| m % 4 == 0);
        (trivial_center && self != SphericalType::A(5)) || listed
    }

    /// The Coxeter matrix of this type on generators named `prefix0, prefix1, ...`
    /// in the usual Bourbaki-style numbering: paths run `0 - 1 - ... `; the
    /// `C_n` double bond sits at the end; `D_n` forks at node `n-3` into
    /// `n-2` and `n-1`; `E_n` branches at node 2 with the short arm `n-1`.
    pub fn matrix(self, prefix: &str) -> CoxeterMatrix {
        use SphericalType::*;
        let n = self.rank() as usize;
        let names: Vec<alloc::string::String> = (0..n).map(|i| alloc::format!("{prefix}{i}")).collect();
        let mut m = CoxeterMatrix::new(&names, Order::Finite(2)).expect("valid names");
        let mut edge = |a: usize, b: usize, k: u32| m.set(Gen(a as u8), Gen(b as u8), Order::Finite(k)).unwrap();
        match self {
            A(_) | H3 | H4 | F4 | C(_) | I2(_) => {
                for i in 0..n.saturating_sub(1) {
                    edge(i, i + 1, 3);
                }
                match self {
                    C(_) => edge(n - 2, n - 1, 4),
                    H3 | H4 => edge(0, 1, 5),
                    F4 => edge(1, 2, 4),
                    I2(k) => edge(0, 1, k),
                    _ => {}
                }
            }
            D(_) => {
                for i in 0..n - 2 {
                    edge(i, i + 1, 3);
                }
                edge(n - 3, n - 1, 3);
            }
            E6 | E7 | E8 => {
                for i in 0..n - 2 {
                    edge(i, i + 1, 3);
                }
                edge(2, n - 1, 3);
            }
        }
        m
    }
}

impl fmt::Display for SphericalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SphericalType::*;
        match self {
            A(n) => write!(f, "A{n}"),
            C(n) => write!(f, "C{n}"),
            D(n) => write!(f, "D{n}"),
            E6 => f.write_str("E6"),
            E7 => f.write_str("E7"),
            E8 => f.write_str("E8"),
            F4 => f.write_str("F4"),
            H3 => f.write_str("H3"),
            H4 => f.write_str("H4"),
            I2(m) => write!(f, "I2({m})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Spherical(SphericalType),
    NonSpherical,
}

impl Classification {
    pub fn spherical(self) -> Option<SphericalType> {
        match self {
            Classification::Spherical(t) => Some(t),
            Classification::NonSpherical => None,
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Spherical(t) => t.fmt(f),
            Classification::NonSpherical => f.write_str("non-spherical"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub members: GenSet,
    pub class: Classification,
}

/// Partition of a subset `J` into irreducible components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDecomposition {
    pub subset: GenSet,
    /// Ordered by smallest member.
    pub components: Vec<Component>,
}

impl ComponentDecomposition {
    pub fn is_spherical(&self) -> bool {
        self.components.iter().all(|c| c.class.spherical().is_some())
    }

    /// Whether `<J>` is finite with central longest element.
    pub fn is_minus_one_type(&self) -> bool {
        self.components.iter().all(|c| c.class.spherical().is_some_and(|t| t.is_minus_one_type()))
    }

    /// `|<J>|`, if spherical and representable.
    pub fn group_order(&self) -> Option<u64> {
        self.components
            .iter()
            .try_fold(1u64, |acc, c| acc.checked_mul(c.class.spherical()?.group_order()?))
    }

    pub fn component_of(&self, g: Gen) -> Option<&Component> {
        self.components.iter().find(|c| c.members.contains(g))
    }
}

fn check_subset(m: &CoxeterMatrix, set: GenSet) -> Result<(), Error> {
    if m.contains_all(set) {
        Ok(())
    } else {
        let bad = set.difference(m.all()).first().expect("nonempty difference");
        Err(Error::UnknownGenerator(alloc::format!("#{}", bad.0)))
    }
}

/// Connected components of `set` in the graph whose edges are the pairs
/// with `m != 2` (infinity counts as an edge).
pub fn components_of(m: &CoxeterMatrix, set: GenSet, edge: impl Fn(Order) -> bool) -> Vec<GenSet> {
    let mut remaining = set;
    let mut out = Vec::new();
    while let Some(start) = remaining.first() {
        let mut comp = GenSet::single(start);
        let mut stack = vec![start];
        remaining.remove(start);
        while let Some(g) = stack.pop() {
            for h in remaining.iter() {
                if edge(m.order(g, h)) {
                    remaining.remove(h);
                    comp.insert(h);
                    stack.push(h);
                }
            }
        }
        out.push(comp);
    }
    out
}

pub fn irreducible_components(m: &CoxeterMatrix, set: GenSet) -> Result<ComponentDecomposition, Error> {
    check_subset(m, set)?;
    let components = components_of(m, set, |o| o != Order::Finite(2))
        .into_iter()
        .map(|members| Component { members, class: classify_irreducible(m, members) })
        .collect();
    Ok(ComponentDecomposition { subset: set, components })
}

/// Classifies an irreducible subset by matching its diagram against the list
/// of finite types.
pub fn classify_spherical(m: &CoxeterMatrix, set: GenSet) -> Result<Classification, Error> {
    check_subset(m, set)?;
    let parts = components_of(m, set, |o| o != Order::Finite(2));
    if parts.len() != 1 {
        return Err(Error::NotIrreducible(parts.len()));
    }
    Ok(classify_irreducible(m, set))
}

fn classify_irreducible(m: &CoxeterMatrix, set: GenSet) -> Classification {
    use SphericalType::*;
    let nodes: Vec<Gen> = set.iter().collect();
    let n = nodes.len();
    let spherical = Classification::Spherical;
    if n == 1 {
        return spherical(A(1));
    }
    let mut degree = vec![0usize; n];
    let mut labels: Vec<(usize, usize, u32)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            match m.order(nodes[i], nodes[j]) {
                Order::Finite(2) => {}
                Order::Finite(k) => {
                    degree[i] += 1;
                    degree[j] += 1;
                    labels.push((i, j, k));
                }
                Order::Infinite => return Classification::NonSpherical,
            }
        }
    }
    if n == 2 {
        return spherical(SphericalType::dihedral(labels[0].2));
    }
    // connected with n - 1 edges: a tree
    if labels.len() != n - 1 || labels.iter().any(|&(_, _, k)| k > 5) {
        return Classification::NonSpherical;
    }
    let heavy: Vec<&(usize, usize, u32)> = labels.iter().filter(|e| e.2 != 3).collect();
    let branch: Vec<usize> = (0..n).filter(|&i| degree[i] >= 3).collect();
    if branch.len() > 1 || branch.iter().any(|&b| degree[b] > 3) {
        return Classification::NonSpherical;
    }
    if let [b] = branch[..] {
        if !heavy.is_empty() {
            return Classification::NonSpherical;
        }
        let mut arms: Vec<usize> = labels
            .iter()
            .filter_map(|&(i, j, _)| if i == b { Some(j) } else if j == b { Some(i) } else { None })
            .map(|start| arm_length(&labels, b, start))
            .collect();
        arms.sort_unstable();
        return match arms[..] {
            [1, 1, r] => spherical(D(r as u32 + 3)),
            [1, 2, 2] => spherical(E6),
            [1, 2, 3] => spherical(E7),
            [1, 2, 4] => spherical(E8),
            _ => Classification::NonSpherical,
        };
    }
    // a path
    let ends: Vec<usize> = (0..n).filter(|&i| degree[i] == 1).collect();
    let at_end = |e: &(usize, usize, u32)| ends.contains(&e.0) || ends.contains(&e.1);
    match heavy[..] {
        [] => spherical(A(n as u32)),
        [e] if e.2 == 4 && at_end(e) => spherical(C(n as u32)),
        [e] if e.2 == 4 && n == 4 => spherical(F4),
        [e] if e.2 == 5 && at_end(e) && n == 3 => spherical(H3),
        [e] if e.2 == 5 && at_end(e) && n == 4 => spherical(H4),
        _ => Classification::NonSpherical,
    }
}

/// Number of nodes on the arm leaving `from` through `start`.
fn arm_length(edges: &[(usize, usize, u32)], from: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (from, start, 1);
    loop {
        let next = edges.iter().find_map(|&(i, j, _)| {
            if i == cur && j != prev {
                Some(j)
            } else if j == cur && i != prev {
                Some(i)
            } else {
                None
            }
        });
        match next {
            Some(nx) => {
                prev = cur;
                cur = nx;
                len += 1;
            }
            None => return len,
        }
    }
}

/// Parses the diagram file format; see [`CoxeterMatrix::parse`].
pub fn parse_diagram(text: &str) -> Result<CoxeterMatrix, Error> {
    Ok(CoxeterMatrix::parse(text)?)
}

pub fn is_minus_one_type(t: SphericalType) -> bool {
    t.is_minus_one_type()
}

/// Whether the generators of a finite irreducible system of type `t` are
/// intrinsic reflections of the group.
pub fn spherical_intrinsic_table(t: SphericalType) -> bool {
    t.intrinsic_in_finite_group()
}

/// `s^perp = {t : m_st = 2}` and `s^inf = {t : m_st = inf}`.
pub fn neighborhoods(m: &CoxeterMatrix, s: Gen) -> Result<(GenSet, GenSet), Error> {
    if s.index() >= m.rank() {
        return Err(Error::ForeignElement);
    }
    let perp = m.gens().filter(|&t| t != s && m.order(s, t) == Order::Finite(2)).collect();
    let inf = m.gens().filter(|&t| m.order(s, t) == Order::Infinite).collect();
    Ok((perp, inf))
}

/// Classes of the graph with edges where `m_st` is odd and finite. Generators
/// in one class are conjugate.
pub fn odd_classes(m: &CoxeterMatrix) -> Vec<GenSet> {
    components_of(m, m.all(), |o| matches!(o, Order::Finite(k) if k % 2 == 1))
}
