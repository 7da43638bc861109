//! Exact arithmetic in a Coxeter group.
//!
//! Elements are stored by their normal form, the lexicographically least
//! reduced word under the generator order of the matrix, so equality of
//! elements is equality of words.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::diagram::odd_classes;
use crate::engine::{Engine, Id, IDENTITY};
use crate::error::Error;
use crate::matrix::{CoxeterMatrix, Gen, GenSet};

/// A group element in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Element(Vec<Gen>);

impl Element {
    pub fn identity() -> Element {
        Element(Vec::new())
    }

    pub fn normal_form(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Same as [`Element::is_identity`].
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Set of letters in any reduced word of the element.
    pub fn support(&self) -> GenSet {
        self.0.iter().copied().collect()
    }
}

/// Rule under which an infinite order was certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InfinityRule {
    /// The pair is a pair of generators with `m = inf`.
    MatrixEntry,
    /// `order(s r, u)` with `r` an involution of `<s^perp>` and `u` in `s^inf`.
    PerpInvolution,
}

impl InfinityRule {
    pub fn tag(self) -> &'static str {
        match self {
            InfinityRule::MatrixEntry => "R1",
            InfinityRule::PerpInvolution => "R2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderResult {
    Finite(u32),
    AboveCap(u32),
    Infinite(InfinityRule),
}

impl OrderResult {
    pub fn finite(self) -> Option<u32> {
        match self {
            OrderResult::Finite(k) => Some(k),
            _ => None,
        }
    }
}

impl fmt::Display for OrderResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderResult::Finite(k) => write!(f, "{k}"),
            OrderResult::AboveCap(cap) => write!(f, ">{cap}"),
            OrderResult::Infinite(rule) => write!(f, "inf ({})", rule.tag()),
        }
    }
}

/// A Coxeter group together with a memo of the part of its Cayley graph
/// visited so far.
///
/// The memo sits behind a `RefCell`: the group can be moved between threads
/// but not shared.
pub struct CoxeterGroup {
    matrix: CoxeterMatrix,
    engine: RefCell<Engine>,
}

impl fmt::Debug for CoxeterGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterGroup").field("matrix", &self.matrix).finish_non_exhaustive()
    }
}

impl Clone for CoxeterGroup {
    fn clone(&self) -> Self {
        CoxeterGroup::new(self.matrix.clone())
    }
}

impl CoxeterGroup {
    pub fn new(matrix: CoxeterMatrix) -> CoxeterGroup {
        let engine = RefCell::new(Engine::new(&matrix));
        CoxeterGroup { matrix, engine }
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    fn check_word(&self, word: &[Gen]) -> Result<(), Error> {
        if word.iter().all(|g| g.index() < self.rank()) {
            Ok(())
        } else {
            Err(Error::ForeignElement)
        }
    }

    pub(crate) fn id_of(&self, x: &Element) -> Result<Id, Error> {
        self.check_word(&x.0)?;
        Ok(self.engine.borrow_mut().reduce(&x.0))
    }

    pub(crate) fn id_of_word(&self, word: &[Gen]) -> Result<Id, Error> {
        self.check_word(word)?;
        Ok(self.engine.borrow_mut().reduce(word))
    }

    pub(crate) fn element_of(&self, id: Id) -> Element {
        Element(self.engine.borrow_mut().normal_form(id))
    }

    pub(crate) fn with_engine<T>(&self, f: impl FnOnce(&mut Engine) -> T) -> T {
        f(&mut self.engine.borrow_mut())
    }

    pub fn identity(&self) -> Element {
        Element::identity()
    }

    pub fn generator(&self, g: Gen) -> Result<Element, Error> {
        self.check_word(&[g])?;
        Ok(Element(vec![g]))
    }

    pub fn reduce(&self, word: &[Gen]) -> Result<Element, Error> {
        let id = self.id_of_word(word)?;
        Ok(self.element_of(id))
    }

    /// Parses space-separated generator names; the empty string and `e` give
    /// the identity.
    pub fn parse(&self, text: &str) -> Result<Element, Error> {
        let text = text.trim();
        if text.is_empty() || text == "e" {
            return Ok(Element::identity());
        }
        let word = self.matrix.parse_word(text)?;
        self.reduce(&word)
    }

    /// Space-separated generator names, `e` for the identity.
    pub fn format(&self, x: &Element) -> String {
        if x.is_identity() {
            String::from("e")
        } else {
            self.matrix.word_to_string(&x.0)
        }
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element, Error> {
        self.check_word(&y.0)?;
        let a = self.id_of(x)?;
        let p = self.engine.borrow_mut().mul_word(a, &y.0);
        Ok(self.element_of(p))
    }

    pub fn product(&self, factors: &[&Element]) -> Result<Element, Error> {
        let mut acc = IDENTITY;
        for f in factors {
            self.check_word(&f.0)?;
            acc = self.engine.borrow_mut().mul_word(acc, &f.0);
        }
        Ok(self.element_of(acc))
    }

    pub fn invert(&self, x: &Element) -> Result<Element, Error> {
        self.check_word(&x.0)?;
        let mut w = x.0.clone();
        w.reverse();
        self.reduce(&w)
    }

    /// `y^-1 x y`.
    pub fn conjugate(&self, x: &Element, y: &Element) -> Result<Element, Error> {
        let yi = self.invert(y)?;
        self.product(&[&yi, x, y])
    }

    pub fn power(&self, x: &Element, k: u32) -> Result<Element, Error> {
        self.check_word(&x.0)?;
        let mut e = self.engine.borrow_mut();
        let mut acc = IDENTITY;
        for _ in 0..k {
            acc = e.mul_word(acc, &x.0);
        }
        drop(e);
        Ok(self.element_of(acc))
    }

    pub fn length(&self, x: &Element) -> usize {
        x.len()
    }

    pub fn is_involution(&self, x: &Element) -> Result<bool, Error> {
        Ok(!x.is_identity() && self.power(x, 2)?.is_identity())
    }

    pub fn left_descents(&self, x: &Element) -> Result<GenSet, Error> {
        let inv = self.invert(x)?;
        self.right_descents(&inv)
    }

    pub fn right_descents(&self, x: &Element) -> Result<GenSet, Error> {
        let id = self.id_of(x)?;
        Ok(GenSet(self.engine.borrow().descents(id)))
    }

    /// Smallest `k <= cap` with `x^k = e`.
    pub fn element_order(&self, x: &Element, cap: u32) -> Result<OrderResult, Error> {
        self.check_word(&x.0)?;
        let mut e = self.engine.borrow_mut();
        let mut acc = IDENTITY;
        for k in 1..=cap {
            acc = e.mul_word(acc, &x.0);
            if acc == IDENTITY {
                return Ok(OrderResult::Finite(k));
            }
        }
        Ok(OrderResult::AboveCap(cap))
    }

    /// Order of `x y`, searched up to `cap`. Never reports an infinite order
    /// on its own.
    pub fn product_order(&self, x: &Element, y: &Element, cap: u32) -> Result<OrderResult, Error> {
        let xy = self.multiply(x, y)?;
        self.element_order(&xy, cap)
    }

    /// Whether `x` is conjugate in `<J>` to a member of `J`.
    ///
    /// Uses that a reflection `t` other than a generator has a left descent
    /// `r` with `l(r t r) = l(t) - 2`, for every left descent `r`.
    pub fn is_reflection_in(&self, j: GenSet, x: &Element) -> Result<bool, Error> {
        self.check_word(&x.0)?;
        if !self.matrix.contains_all(j) {
            return Err(Error::ForeignElement);
        }
        if !x.support().is_subset(j) {
            return Err(Error::NotInSubgroup);
        }
        let mut e = self.engine.borrow_mut();
        let mut cur = e.reduce(&x.0);
        loop {
            match e.length(cur) {
                0 => return Ok(false),
                1 => return Ok(true),
                len => {
                    let r = Gen(e.descents(cur).trailing_zeros() as u8);
                    let xr = e.mul_gen(cur, r);
                    let next = e.left_mul_gen(r, xr);
                    if e.length(next) + 2 != len {
                        return Ok(false);
                    }
                    cur = next;
                }
            }
        }
    }

    /// `(-1)^(number of s letters)`, the character sending `s` to `-1` and the
    /// other generators to `1`.
    pub fn parity_character(&self, s: Gen, word: &[Gen]) -> Result<i8, Error> {
        self.check_word(word)?;
        self.check_word(&[s])?;
        let class = odd_classes(&self.matrix).into_iter().find(|c| c.contains(s)).expect("s lies in a class");
        if class.len() != 1 {
            return Err(Error::OddClassNotSingleton(self.matrix.name(s).into()));
        }
        let count = word.iter().filter(|&&g| g == s).count();
        Ok(if count % 2 == 0 { 1 } else { -1 })
    }

    /// Breadth-first closure of `<J>` under right multiplication.
    pub fn enumerate(&self, j: GenSet, cap: usize) -> Result<EnumeratedGroup<'_>, Error> {
        EnumeratedGroup::build(self, j, cap)
    }

    pub fn longest_element(&self, j: GenSet, cap: usize) -> Result<Element, Error> {
        let g = self.enumerate(j, cap)?;
        Ok(g.longest())
    }

    pub fn center(&self, j: GenSet, cap: usize) -> Result<Vec<Element>, Error> {
        let g = self.enumerate(j, cap)?;
        Ok(g.center())
    }
}

/// The complete element list of a finite standard parabolic subgroup.
///
/// Elements are addressed by their position in breadth-first order; position
/// 0 is the identity.
pub struct EnumeratedGroup<'g> {
    group: &'g CoxeterGroup,
    subset: GenSet,
    ids: Vec<Id>,
    lengths: Vec<u32>,
    position: Positions,
    longest: usize,
}

/// Engine id to position. Dense when the subgroup fills a good part of the
/// explored graph, otherwise a sorted list.
enum Positions {
    /// `u32::MAX` outside the subgroup
    Dense(Vec<u32>),
    Sparse(Vec<(Id, u32)>),
}

impl fmt::Debug for EnumeratedGroup<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EnumeratedGroup")
            .field("subset", &self.subset)
            .field("len", &self.ids.len())
            .finish_non_exhaustive()
    }
}

impl<'g> EnumeratedGroup<'g> {
    fn build(group: &'g CoxeterGroup, j: GenSet, cap: usize) -> Result<EnumeratedGroup<'g>, Error> {
        if !group.matrix.contains_all(j) {
            return Err(Error::ForeignElement);
        }
        let gens: Vec<Gen> = j.iter().collect();
        let mut e = group.engine.borrow_mut();
        let mut ids = vec![IDENTITY];
        // a bitmap over the explored graph, or a set once the graph is big
        let dense = e.node_count() <= 1 << 14;
        let mut bitmap = vec![false; if dense { e.node_count() } else { 0 }];
        let mut set = BTreeSet::new();
        let mut first_visit = |y: Id, len: usize| -> bool {
            if dense {
                if bitmap.len() <= y as usize {
                    bitmap.resize(len.max(y as usize + 1), false);
                }
                !core::mem::replace(&mut bitmap[y as usize], true)
            } else {
                set.insert(y)
            }
        };
        first_visit(IDENTITY, 1);
        let mut head = 0;
        while head < ids.len() {
            let x = ids[head];
            head += 1;
            for &g in &gens {
                let y = e.mul_gen(x, g);
                if first_visit(y, e.node_count()) {
                    if ids.len() == cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    ids.push(y);
                }
            }
        }
        let position = if ids.len() * 8 >= e.node_count() {
            let mut dense = vec![u32::MAX; e.node_count()];
            for (i, &id) in ids.iter().enumerate() {
                dense[id as usize] = i as u32;
            }
            Positions::Dense(dense)
        } else {
            let mut sparse: Vec<(Id, u32)> = ids.iter().enumerate().map(|(i, &id)| (id, i as u32)).collect();
            sparse.sort_unstable();
            Positions::Sparse(sparse)
        };
        let lengths: Vec<u32> = ids.iter().map(|&id| e.length(id)).collect();
        let longest = (0..ids.len()).max_by_key(|&i| lengths[i]).unwrap_or(0);
        drop(e);
        Ok(EnumeratedGroup { group, subset: j, ids, lengths, position, longest })
    }

    pub fn group(&self) -> &'g CoxeterGroup {
        self.group
    }

    pub fn subset(&self) -> GenSet {
        self.subset
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn element(&self, i: usize) -> Element {
        self.group.element_of(self.ids[i])
    }

    pub fn elements(&self) -> Vec<Element> {
        (0..self.len()).map(|i| self.element(i)).collect()
    }

    pub fn length(&self, i: usize) -> u32 {
        self.lengths[i]
    }

    pub fn position(&self, x: &Element) -> Result<Option<usize>, Error> {
        let id = self.group.id_of(x)?;
        Ok(self.position_of_id(id))
    }

    pub(crate) fn position_of_id(&self, id: Id) -> Option<usize> {
        match &self.position {
            Positions::Dense(v) => v.get(id as usize).filter(|&&p| p != u32::MAX).map(|&p| p as usize),
            Positions::Sparse(v) => v.binary_search_by_key(&id, |&(x, _)| x).ok().map(|i| v[i].1 as usize),
        }
    }

    pub fn contains(&self, x: &Element) -> Result<bool, Error> {
        Ok(self.position(x)?.is_some())
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        let p = self.group.with_engine(|e| e.mul(self.ids[a], self.ids[b]));
        self.position_of_id(p).expect("closed under products")
    }

    pub fn inverse(&self, a: usize) -> usize {
        let p = self.group.with_engine(|e| e.inverse(self.ids[a]));
        self.position_of_id(p).expect("closed under inverses")
    }

    /// Position of `a * g` for a generator `g` of the subgroup.
    pub fn mul_gen(&self, a: usize, g: Gen) -> usize {
        debug_assert!(self.subset.contains(g));
        let p = self.group.with_engine(|e| e.mul_gen(self.ids[a], g));
        self.position_of_id(p).expect("closed under generators")
    }

    /// Position of `g * a` for a generator `g` of the subgroup.
    pub fn gen_mul(&self, g: Gen, a: usize) -> usize {
        debug_assert!(self.subset.contains(g));
        let p = self.group.with_engine(|e| e.left_mul_gen(g, self.ids[a]));
        self.position_of_id(p).expect("closed under generators")
    }

    pub fn longest_position(&self) -> usize {
        self.longest
    }

    pub fn longest(&self) -> Element {
        self.element(self.longest)
    }

    /// Positions of the elements commuting with every generator.
    pub fn center_positions(&self) -> Vec<usize> {
        let gens: Vec<Gen> = self.subset.iter().collect();
        self.group.with_engine(|e| {
            (0..self.ids.len())
                .filter(|&i| gens.iter().all(|&g| e.mul_gen(self.ids[i], g) == e.left_mul_gen(g, self.ids[i])))
                .collect()
        })
    }

    pub fn center(&self) -> Vec<Element> {
        self.center_positions().into_iter().map(|i| self.element(i)).collect()
    }

    /// Full multiplication table, row-major.
    pub fn multiplication_table(&self) -> Vec<u32> {
        let n = self.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = self.multiply(a, b) as u32;
            }
        }
        table
    }
}
