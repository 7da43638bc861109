mod common;

use std::collections::{BTreeMap, VecDeque};

use common::{matrix, matrix_and_word, tits_reduce};
use coxeter_core::{CoxeterGroup, CoxeterMatrix, Element, Gen, GenSet, SphericalType};
use proptest::prelude::*;
use proptest::strategy::ValueTree;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn reduce_matches_braid_rewriting((m, w) in matrix_and_word(4, 9)) {
        let g = CoxeterGroup::new(m.clone());
        let x = g.reduce(&w).unwrap();
        prop_assert_eq!(x.normal_form(), &tits_reduce(&m, &w)[..]);
    }

    #[test]
    fn reduce_is_idempotent((m, w) in matrix_and_word(5, 16)) {
        let g = CoxeterGroup::new(m);
        let x = g.reduce(&w).unwrap();
        prop_assert_eq!(g.reduce(x.normal_form()).unwrap(), x);
    }

    #[test]
    fn group_laws((m, w) in matrix_and_word(5, 12), split in 0usize..12, split2 in 0usize..12) {
        let g = CoxeterGroup::new(m);
        let (p, rest) = w.split_at(split.min(w.len()));
        let (q, r) = rest.split_at(split2.min(rest.len()));
        let (x, y, z) = (g.reduce(p).unwrap(), g.reduce(q).unwrap(), g.reduce(r).unwrap());
        let xy_z = g.multiply(&g.multiply(&x, &y).unwrap(), &z).unwrap();
        let x_yz = g.multiply(&x, &g.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(&xy_z, &x_yz);
        prop_assert_eq!(&xy_z, &g.reduce(&w).unwrap());
        let xi = g.invert(&x).unwrap();
        prop_assert!(g.multiply(&x, &xi).unwrap().is_identity());
        prop_assert_eq!(xi.len(), x.len());
        prop_assert_eq!(g.multiply(&x, &g.identity()).unwrap(), x.clone());
        let c = g.conjugate(&x, &y).unwrap();
        prop_assert_eq!(c, g.product(&[&g.invert(&y).unwrap(), &x, &y]).unwrap());
    }

    #[test]
    fn parity_is_well_defined((m, w) in matrix_and_word(5, 14)) {
        let g = CoxeterGroup::new(m.clone());
        let x = g.reduce(&w).unwrap();
        for s in m.gens() {
            if let Ok(p) = g.parity_character(s, &w) {
                prop_assert_eq!(p, g.parity_character(s, x.normal_form()).unwrap());
            }
        }
    }

    #[test]
    fn descents_agree_with_lengths((m, w) in matrix_and_word(5, 12)) {
        let g = CoxeterGroup::new(m.clone());
        let x = g.reduce(&w).unwrap();
        let right = g.right_descents(&x).unwrap();
        let left = g.left_descents(&x).unwrap();
        for s in m.gens() {
            let gs = g.generator(s).unwrap();
            prop_assert_eq!(right.contains(s), g.multiply(&x, &gs).unwrap().len() < x.len());
            prop_assert_eq!(left.contains(s), g.multiply(&gs, &x).unwrap().len() < x.len());
        }
    }

    #[test]
    fn reflection_test_matches_conjugation((m, w) in matrix_and_word(4, 6), s in 0u8..4) {
        let g = CoxeterGroup::new(m.clone());
        let s = Gen(s % m.rank() as u8);
        let y = g.reduce(&w).unwrap();
        let t = g.conjugate(&g.generator(s).unwrap(), &y).unwrap();
        prop_assert!(g.is_reflection_in(m.all(), &t).unwrap());
        // reflections have odd length, so products of two never are
        let u = g.conjugate(&g.generator(Gen(0)).unwrap(), &y).unwrap();
        prop_assert!(!g.is_reflection_in(m.all(), &g.multiply(&t, &u).unwrap()).unwrap());
    }
}

/// Lengths from breadth-first search in the Cayley graph.
fn bfs_lengths(m: &CoxeterMatrix, g: &CoxeterGroup, cap: usize) -> BTreeMap<Element, usize> {
    let mut dist = BTreeMap::from([(Element::identity(), 0)]);
    let mut queue = VecDeque::from([Element::identity()]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        for s in m.gens() {
            let y = g.multiply(&x, &g.generator(s).unwrap()).unwrap();
            if !dist.contains_key(&y) {
                dist.insert(y.clone(), d + 1);
                queue.push_back(y);
            }
        }
        assert!(dist.len() <= cap);
    }
    dist
}

#[test]
fn lengths_are_graph_distances() {
    use SphericalType::*;
    for t in [A(3), A(4), C(3), C(4), D(4), D(5), F4, H3, I2(7)] {
        let m = t.matrix("g");
        let g = CoxeterGroup::new(m.clone());
        let dist = bfs_lengths(&m, &g, 5000);
        assert_eq!(dist.len() as u64, t.group_order().unwrap(), "{t}");
        for (x, d) in dist {
            assert_eq!(x.len(), d, "{t}");
        }
    }
}

#[test]
fn enumeration_matches_order_formulas() {
    use SphericalType::*;
    let types = [
        A(1), A(2), A(3), A(4), A(5), A(6), A(7), C(2), C(3), C(4), C(5), C(6), D(4), D(5), D(6), E6, F4, H3,
        H4, I2(5), I2(8), I2(13),
    ];
    for t in types {
        let m = t.matrix("g");
        let g = CoxeterGroup::new(m.clone());
        let e = g.enumerate(m.all(), 200_000).unwrap();
        assert_eq!(e.len() as u64, t.group_order().unwrap(), "{t}");
        assert_eq!(e.longest().len() as u64, t.reflection_count(), "{t}");
    }
}

#[test]
fn reducible_orders_multiply() {
    let m = CoxeterMatrix::parse("generators a b c d e\nedge a b 3\nedge c d 4\n").unwrap();
    let g = CoxeterGroup::new(m.clone());
    assert_eq!(g.enumerate(m.all(), 1000).unwrap().len(), 6 * 8 * 2);
}

#[test]
fn longest_elements_are_involutions_permuting_generators() {
    use SphericalType::*;
    for t in [A(4), C(3), D(5), E6, F4, H3, I2(6)] {
        let m = t.matrix("g");
        let g = CoxeterGroup::new(m.clone());
        let rho = g.longest_element(m.all(), 200_000).unwrap();
        assert!(g.is_involution(&rho).unwrap());
        let mut images = GenSet::EMPTY;
        for s in m.gens() {
            let x = g.conjugate(&g.generator(s).unwrap(), &rho).unwrap();
            assert_eq!(x.len(), 1, "{t}");
            images.insert(x.normal_form()[0]);
        }
        assert_eq!(images, m.all());
    }
}

#[test]
fn centers_of_irreducible_types() {
    use SphericalType::*;
    for t in [A(1), A(3), A(4), C(3), D(4), D(5), F4, H3, I2(6), I2(9)] {
        let m = t.matrix("g");
        let g = CoxeterGroup::new(m.clone());
        let center = g.center(m.all(), 50_000).unwrap();
        let rho = g.longest_element(m.all(), 50_000).unwrap();
        if t.is_minus_one_type() {
            assert_eq!(center, vec![Element::identity(), rho], "{t}");
        } else {
            assert_eq!(center, vec![Element::identity()], "{t}");
        }
    }
}

#[test]
fn product_order_never_claims_infinity() {
    let m = CoxeterMatrix::parse("generators a b c\nedge a b inf\nedge b c inf\nedge a c inf\n").unwrap();
    let g = CoxeterGroup::new(m);
    let a = g.parse("a").unwrap();
    let bc = g.parse("b c").unwrap();
    assert_eq!(g.product_order(&a, &bc, 200).unwrap(), coxeter_core::OrderResult::AboveCap(200));
}

/// Conjugate standard parabolic subgroups have the same rank.
#[test]
fn conjugate_parabolics_have_equal_rank() {
    use SphericalType::*;
    for t in [A(3), C(3), H3, I2(6)] {
        let m = t.matrix("g");
        let g = CoxeterGroup::new(m.clone());
        let all = g.enumerate(m.all(), 2000).unwrap();
        let subsets: Vec<GenSet> = m.all().subsets().collect();
        let members: Vec<std::collections::BTreeSet<Element>> =
            subsets.iter().map(|&j| g.enumerate(j, 2000).unwrap().elements().into_iter().collect()).collect();
        for (i, &j) in subsets.iter().enumerate() {
            for w in all.elements() {
                let wi = g.invert(&w).unwrap();
                let conj: std::collections::BTreeSet<Element> =
                    members[i].iter().map(|x| g.product(&[&wi, x, &w]).unwrap()).collect();
                for (k, &kset) in subsets.iter().enumerate() {
                    if members[k] == conj {
                        assert_eq!(j.len(), kset.len(), "{t}");
                    }
                }
            }
        }
    }
}

#[test]
fn enumeration_of_random_parabolics_is_closed() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    for _ in 0..100 {
        let m = matrix(4).new_tree(&mut runner).unwrap().current();
        let g = CoxeterGroup::new(m.clone());
        if let Ok(e) = g.enumerate(m.all(), 3000) {
            for i in 0..e.len() {
                for s in m.gens() {
                    let x = g.multiply(&e.element(i), &g.generator(s).unwrap()).unwrap();
                    assert!(e.contains(&x).unwrap());
                }
            }
            let d = coxeter_core::diagram::irreducible_components(&m, m.all()).unwrap();
            assert_eq!(Some(e.len() as u64), d.group_order());
        }
    }
}
