//! Lazily built Cayley graph of a Coxeter group.
//!
//! Every element that has been touched gets a node holding its length, its
//! right descent set and the right-multiplication links to its neighbours.
//! Descent sets are computed from rank-two coset decompositions: for `y = x s`
//! with `l(y) = l(x) + 1`, a generator `r != s` is a right descent of `y`
//! exactly when `m_rs` alternating letters ending in `s` can be stripped from
//! `y`, and in that case `y = u w_rs` with `w_rs` the longest element of
//! `<r, s>`. All links of a node to its shorter neighbours are filled in when
//! the node is created, so stripping is a table lookup.
//!
//! A node is identified by the pair `(y r, r)` where `r` is its smallest right
//! descent. Following those parents back to the identity spells the reduced
//! word of `y` whose letters, read from the right, are lexicographically
//! least.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::{CoxeterMatrix, Gen, Order};

pub(crate) type Id = u32;

const NONE: Id = Id::MAX;
pub(crate) const IDENTITY: Id = 0;

#[derive(Debug, Clone)]
pub(crate) struct Engine {
    rank: usize,
    /// `m_st` with 0 standing for infinity.
    orders: Vec<u32>,
    length: Vec<u32>,
    descents: Vec<u64>,
    parent: Vec<(Id, u8)>,
    links: Vec<Id>,
    /// memo of inverses, `NONE` until first asked for
    inverses: Vec<Id>,
    /// memo of left multiplication by generators, laid out like `links`
    left_links: Vec<Id>,
    index: BTreeMap<(Id, u8), Id>,
}

impl Engine {
    pub(crate) fn new(matrix: &CoxeterMatrix) -> Engine {
        let rank = matrix.rank();
        let mut orders = vec![0; rank * rank];
        for a in matrix.gens() {
            for b in matrix.gens() {
                orders[a.index() * rank + b.index()] = match matrix.order(a, b) {
                    Order::Finite(m) => m,
                    Order::Infinite => 0,
                };
            }
        }
        Engine {
            rank,
            orders,
            length: vec![0],
            descents: vec![0],
            parent: vec![(NONE, 0)],
            links: vec![NONE; rank],
            inverses: vec![IDENTITY],
            left_links: vec![NONE; rank],
            index: BTreeMap::new(),
        }
    }

    pub(crate) fn node_count(&self) -> usize {
        self.length.len()
    }

    #[inline]
    pub(crate) fn length(&self, x: Id) -> u32 {
        self.length[x as usize]
    }

    #[inline]
    pub(crate) fn descents(&self, x: Id) -> u64 {
        self.descents[x as usize]
    }

    #[inline]
    fn m(&self, a: u8, b: u8) -> u32 {
        self.orders[a as usize * self.rank + b as usize]
    }

    #[inline]
    fn link(&self, x: Id, s: u8) -> Id {
        self.links[x as usize * self.rank + s as usize]
    }

    #[inline]
    fn set_link(&mut self, x: Id, s: u8, y: Id) {
        self.links[x as usize * self.rank + s as usize] = y;
    }

    /// `x * s`.
    pub(crate) fn mul_gen(&mut self, x: Id, s: Gen) -> Id {
        let known = self.link(x, s.0);
        if known != NONE {
            return known;
        }
        debug_assert_eq!(self.descents(x) >> s.0 & 1, 0, "down links are filled at creation");
        self.create_up(x, s.0)
    }

    fn create_up(&mut self, x: Id, s: u8) -> Id {
        let rank = self.rank as u8;
        let mut desc: u64 = 1 << s;
        // coset representatives u with y = u * w_rs, one per extra descent r
        let mut reps: Vec<(u8, Id)> = Vec::new();
        for r in 0..rank {
            if r == s {
                continue;
            }
            let m = self.m(r, s);
            if m == 0 {
                continue;
            }
            let mut z = x;
            let mut next = r;
            let mut k = 1;
            while k < m {
                if self.descents(z) >> next & 1 == 0 {
                    break;
                }
                z = self.link(z, next);
                next = if next == r { s } else { r };
                k += 1;
            }
            if k == m {
                desc |= 1 << r;
                reps.push((r, z));
            }
        }

        // y * r for every descent r
        let mut below: Vec<(u8, Id)> = Vec::with_capacity(reps.len() + 1);
        below.push((s, x));
        for &(r, u) in &reps {
            let m = self.m(r, s);
            // w_rs * r is the alternating word of length m - 1 ending in s
            let mut z = u;
            for i in 0..m - 1 {
                let from_end = m - 2 - i;
                let letter = if from_end.is_multiple_of(2) { s } else { r };
                z = self.mul_gen(z, Gen(letter));
            }
            below.push((r, z));
        }

        let rmin = desc.trailing_zeros() as u8;
        let parent = below.iter().find(|(r, _)| *r == rmin).map(|(_, p)| *p).expect("rmin is a descent");
        if let Some(&existing) = self.index.get(&(parent, rmin)) {
            debug_assert_eq!(self.descents(existing), desc);
            self.set_link(x, s, existing);
            return existing;
        }

        let y = self.length.len() as Id;
        self.length.push(self.length(x) + 1);
        self.descents.push(desc);
        self.parent.push((parent, rmin));
        self.inverses.push(NONE);
        self.left_links.extend(core::iter::repeat_n(NONE, self.rank));
        self.links.extend(core::iter::repeat_n(NONE, self.rank));
        self.index.insert((parent, rmin), y);
        for (r, z) in below {
            self.set_link(y, r, z);
            self.set_link(z, r, y);
        }
        y
    }

    /// Reduced word of `x`, lexicographically least when read from the right.
    pub(crate) fn word(&self, mut x: Id) -> Vec<Gen> {
        let mut out = Vec::with_capacity(self.length(x) as usize);
        while x != IDENTITY {
            let (p, r) = self.parent[x as usize];
            out.push(Gen(r));
            x = p;
        }
        out.reverse();
        out
    }

    pub(crate) fn mul_word(&mut self, mut x: Id, word: &[Gen]) -> Id {
        for &g in word {
            x = self.mul_gen(x, g);
        }
        x
    }

    pub(crate) fn reduce(&mut self, word: &[Gen]) -> Id {
        self.mul_word(IDENTITY, word)
    }

    pub(crate) fn mul(&mut self, x: Id, y: Id) -> Id {
        let w = self.word(y);
        self.mul_word(x, &w)
    }

    pub(crate) fn inverse(&mut self, x: Id) -> Id {
        let known = self.inverses[x as usize];
        if known != NONE {
            return known;
        }
        let mut w = self.word(x);
        w.reverse();
        let y = self.reduce(&w);
        self.inverses[x as usize] = y;
        self.inverses[y as usize] = x;
        y
    }

    /// `s * x`.
    pub(crate) fn left_mul_gen(&mut self, s: Gen, x: Id) -> Id {
        let slot = x as usize * self.rank + s.index();
        if self.left_links[slot] != NONE {
            return self.left_links[slot];
        }
        let w = self.word(x);
        let start = self.mul_gen(IDENTITY, s);
        let y = self.mul_word(start, &w);
        self.left_links[slot] = y;
        self.left_links[y as usize * self.rank + s.index()] = x;
        y
    }

    /// The lexicographically least reduced word of `x`.
    pub(crate) fn normal_form(&mut self, x: Id) -> Vec<Gen> {
        let inv = self.inverse(x);
        let mut w = self.word(inv);
        w.reverse();
        w
    }
}
