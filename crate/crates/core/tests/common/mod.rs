#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use coxeter_core::{CoxeterMatrix, Gen, Order, SphericalType};
use proptest::prelude::*;

pub mod geometry;

/// Matrix on generators `g0, g1, ...` with the given upper-triangle labels,
/// listed row by row.
pub fn matrix_from_labels(rank: usize, labels: &[Order]) -> CoxeterMatrix {
    let names: Vec<String> = (0..rank).map(|i| format!("g{i}")).collect();
    let mut m = CoxeterMatrix::new(&names, Order::Finite(2)).unwrap();
    let mut k = 0;
    for i in 0..rank {
        for j in i + 1..rank {
            m.set(Gen(i as u8), Gen(j as u8), labels[k]).unwrap();
            k += 1;
        }
    }
    m
}

pub fn label() -> impl Strategy<Value = Order> {
    prop_oneof![
        4 => Just(Order::Finite(2)),
        3 => Just(Order::Finite(3)),
        1 => Just(Order::Finite(4)),
        1 => Just(Order::Finite(5)),
        1 => Just(Order::Finite(6)),
        1 => Just(Order::Infinite),
    ]
}

/// A random Coxeter matrix of rank 1 to `max_rank`.
pub fn matrix(max_rank: usize) -> impl Strategy<Value = CoxeterMatrix> {
    (1..=max_rank).prop_flat_map(|n| {
        prop::collection::vec(label(), n * (n - 1) / 2).prop_map(move |l| matrix_from_labels(n, &l))
    })
}

/// A random matrix and a word over its generators.
pub fn matrix_and_word(max_rank: usize, max_len: usize) -> impl Strategy<Value = (CoxeterMatrix, Vec<Gen>)> {
    matrix(max_rank).prop_flat_map(move |m| {
        let n = m.rank() as u8;
        (Just(m), prop::collection::vec((0..n).prop_map(Gen), 0..=max_len))
    })
}

fn braid_neighbours(m: &CoxeterMatrix, w: &[Gen]) -> Vec<Vec<Gen>> {
    let mut out = Vec::new();
    for i in 0..w.len().saturating_sub(1) {
        let (a, b) = (w[i], w[i + 1]);
        if a == b {
            continue;
        }
        let Order::Finite(k) = m.order(a, b) else { continue };
        let k = k as usize;
        if i + k > w.len() || !(0..k).all(|t| w[i + t] == if t % 2 == 0 { a } else { b }) {
            continue;
        }
        let mut v = w.to_vec();
        for t in 0..k {
            v[i + t] = if t % 2 == 0 { b } else { a };
        }
        out.push(v);
    }
    out
}

/// All words obtained from `w` by braid moves.
pub fn braid_class(m: &CoxeterMatrix, w: &[Gen]) -> BTreeSet<Vec<Gen>> {
    let mut seen = BTreeSet::from([w.to_vec()]);
    let mut queue = VecDeque::from([w.to_vec()]);
    while let Some(x) = queue.pop_front() {
        for y in braid_neighbours(m, &x) {
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Reduction by braid moves and deletion of repeated letters; the result is
/// the least word of the braid class of a reduced word.
pub fn tits_reduce(m: &CoxeterMatrix, w: &[Gen]) -> Vec<Gen> {
    let mut cur = w.to_vec();
    'outer: loop {
        let class = braid_class(m, &cur);
        for x in &class {
            if let Some(i) = (1..x.len()).find(|&i| x[i] == x[i - 1]) {
                let mut y = x.clone();
                y.drain(i - 1..=i);
                cur = y;
                continue 'outer;
            }
        }
        return class.into_iter().next().unwrap();
    }
}

/// Vertex sets of every walk `u_0, ..., u_n` in `set` whose consecutive
/// letters have finite-order products, found by exploring (end, visited)
/// states one step at a time.
pub fn walk_vertex_sets(m: &CoxeterMatrix, set: coxeter_core::GenSet) -> BTreeSet<u64> {
    let mut seen: BTreeSet<(Gen, u64)> = set.iter().map(|u| (u, 1u64 << u.0)).collect();
    let mut queue: VecDeque<(Gen, u64)> = seen.iter().copied().collect();
    while let Some((u, visited)) = queue.pop_front() {
        for v in set.iter() {
            if v != u && m.order(u, v).is_finite() {
                let next = (v, visited | 1 << v.0);
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen.into_iter().map(|(_, v)| v).collect()
}

/// The second blowing-down condition read literally: every walk stays
/// inside `a^inf` or inside `b^inf`.
pub fn bdg2_by_walks(m: &CoxeterMatrix, s: Gen, a: Gen, b: Gen) -> bool {
    let inf = |x: Gen| -> u64 { m.gens().filter(|&t| m.order(x, t) == Order::Infinite).map(|t| 1u64 << t.0).sum() };
    let (a_inf, b_inf) = (inf(a), inf(b));
    walk_vertex_sets(m, coxeter_core::GenSet(inf(s)))
        .into_iter()
        .all(|v| v & !a_inf == 0 || v & !b_inf == 0)
}

/// Direct product of the given types. Factor `i` has generators named
/// `{prefix}{i}_0, {prefix}{i}_1, ...`; `lead` names extra commuting
/// generators placed first.
pub fn product_matrix(lead: &[&str], types: &[SphericalType], prefix: &str) -> CoxeterMatrix {
    let mut names: Vec<String> = lead.iter().map(|x| x.to_string()).collect();
    let mut edges = Vec::new();
    for (i, t) in types.iter().enumerate() {
        let base = t.matrix(&format!("{prefix}{i}_"));
        let offset = names.len() as u8;
        names.extend(base.names().iter().cloned());
        for x in base.gens() {
            for y in base.gens() {
                if x < y && base.order(x, y) != Order::Finite(2) {
                    edges.push((Gen(x.0 + offset), Gen(y.0 + offset), base.order(x, y)));
                }
            }
        }
    }
    let mut m = CoxeterMatrix::new(&names, Order::Finite(2)).unwrap();
    for (x, y, o) in edges {
        m.set(x, y, o).unwrap();
    }
    m
}

/// `<s> x T_1 x ... x T_k`, with `s` first.
pub fn product_with_s(types: &[SphericalType]) -> CoxeterMatrix {
    product_matrix(&["s"], types, "c")
}
