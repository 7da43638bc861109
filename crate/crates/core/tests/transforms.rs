mod common;

use std::collections::BTreeSet;

use common::{label, matrix_from_labels, product_with_s};
use coxeter_core::intrinsic::decide_intrinsic;
use coxeter_core::oracle::verify_coxeter_generating_set;
use coxeter_core::transforms::{
    decomposition_case, eliminate_reflection, DecompositionCase, Elimination, GeneratingSet, Shape,
};
use coxeter_core::{Caps, CoxeterGroup, CoxeterMatrix, Element, Gen, Order, OrderResult, SphericalType};
use proptest::prelude::*;

fn final_set(e: &Elimination) -> Option<&GeneratingSet> {
    match e {
        Elimination::Translation(r) => Some(r),
        Elimination::BlowDown { result, .. } => Some(result),
        Elimination::NoneAvailable => None,
    }
}

/// Every conjugate of every word, inside the enumerated group.
fn reflections_of(g: &CoxeterGroup, words: &[Element], cap: usize) -> BTreeSet<Element> {
    let e = g.enumerate(g.matrix().all(), cap).unwrap();
    let mut out = BTreeSet::new();
    for w in e.elements() {
        for x in words {
            out.insert(g.conjugate(x, &w).unwrap());
        }
    }
    out
}

fn small_type() -> impl Strategy<Value = SphericalType> {
    use SphericalType::*;
    prop_oneof![Just(A(1)), Just(A(2)), Just(A(3)), Just(C(2)), Just(C(3)), Just(I2(5)), Just(I2(6)), Just(H3)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// In finite products the new set is a Coxeter generating set of the
    /// derived type in which `s` is no longer a reflection.
    #[test]
    fn finite_eliminations_are_sound(types in prop::collection::vec(small_type(), 1..=2)) {
        let m = product_with_s(&types);
        let caps = Caps::default();
        let g = CoxeterGroup::new(m.clone());
        let e = eliminate_reflection(&m, Gen(0), &caps).unwrap();
        let r = final_set(&e).expect("a finite product always splits");
        // blow-downs in a finite group never need a twist: s^inf is empty
        let twisted = matches!(e, Elimination::BlowDown { twist: Some(_), .. });
        prop_assert!(!twisted);
        let derived = r.to_matrix().expect("all entries settle in a finite group");
        let report = verify_coxeter_generating_set(&g, &r.words, &derived, caps.max_enum).unwrap();
        prop_assert!(report.is_verified(), "{:?}", report);
        let s = g.generator(Gen(0)).unwrap();
        prop_assert!(!reflections_of(&g, &r.words, caps.max_enum).contains(&s));
        let nm = r.non_membership.as_ref().unwrap();
        prop_assert!(!nm.s_rho_is_reflection);
    }
}

/// `s` right-angled against random neighbours, other labels random.
fn right_angled_at_s(max_rank: usize) -> impl Strategy<Value = CoxeterMatrix> {
    (2..=max_rank).prop_flat_map(|n| {
        prop::collection::vec(label(), n * (n - 1) / 2).prop_map(move |mut labels| {
            for l in labels.iter_mut().take(n - 1) {
                if *l != Order::Finite(2) {
                    *l = Order::Infinite;
                }
            }
            matrix_from_labels(n, &labels)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn elimination_exists_iff_not_intrinsic(m in right_angled_at_s(6)) {
        let caps = Caps { max_enum: 20_000, order_cap: 60 };
        let verdict = decide_intrinsic(&m, Gen(0), &caps).unwrap();
        let e = eliminate_reflection(&m, Gen(0), &caps).unwrap();
        prop_assert_eq!(verdict.is_intrinsic(), matches!(e, Elimination::NoneAvailable));
    }

    /// Every new generator is an involution and every settled entry is the
    /// true order of the product.
    #[test]
    fn derived_entries_are_orders(m in right_angled_at_s(5)) {
        let caps = Caps { max_enum: 20_000, order_cap: 60 };
        let e = eliminate_reflection(&m, Gen(0), &caps).unwrap();
        let mut sets: Vec<&GeneratingSet> = final_set(&e).into_iter().collect();
        if let Elimination::BlowDown { twist: Some((_, t)), .. } = &e {
            sets.push(t);
        }
        for r in sets {
            let g = CoxeterGroup::new(r.ambient.clone());
            for (i, x) in r.words.iter().enumerate() {
                prop_assert!(g.is_involution(x).unwrap());
                if let Shape::Conjugate { base, by } = &r.shapes[i] {
                    prop_assert_eq!(x, &g.conjugate(&g.generator(*base).unwrap(), by).unwrap());
                }
                for (j, y) in r.words.iter().enumerate().skip(i + 1) {
                    match r.entry(i, j) {
                        OrderResult::Finite(k) => {
                            prop_assert_eq!(g.product_order(x, y, caps.order_cap).unwrap(), OrderResult::Finite(k));
                        }
                        // no power up to the cap can vanish for an infinite pair
                        OrderResult::Infinite(_) => {
                            prop_assert_eq!(
                                g.product_order(x, y, caps.order_cap).unwrap(),
                                OrderResult::AboveCap(caps.order_cap)
                            );
                        }
                        OrderResult::AboveCap(_) => {}
                    }
                }
            }
        }
    }
}

/// The twisted matrix describes the conjugated generators: every finite
/// entry is the order of the product in the ambient group.
#[test]
fn twisted_matrix_matches_ambient_orders() {
    // u sees b, v sees a, w sees neither: no candidate is proper
    let m = CoxeterMatrix::parse(
        "generators s a b u v w\nedge a b 3\nedge s u inf\nedge s v inf\nedge s w inf\nedge u v inf\n\
         edge u w inf\nedge v w inf\nedge a u inf\nedge b v inf\nedge a w inf\nedge b w inf\n",
    )
    .unwrap();
    let caps = Caps { order_cap: 60, ..Caps::default() };
    let s = m.gen("s").unwrap();
    let Elimination::BlowDown { twist: Some((twisted, t)), result } = eliminate_reflection(&m, s, &caps).unwrap()
    else {
        panic!("a twist is needed");
    };
    let g = CoxeterGroup::new(m.clone());
    for x in twisted.gens() {
        for y in twisted.gens().filter(|&y| y > x) {
            let got = g.product_order(&t.words[x.index()], &t.words[y.index()], caps.order_cap).unwrap();
            match twisted.order(x, y) {
                Order::Finite(k) => assert_eq!(got, OrderResult::Finite(k), "{} {}", t.names[x.index()], t.names[y.index()]),
                Order::Infinite => assert_eq!(got, OrderResult::AboveCap(caps.order_cap)),
            }
        }
    }
    assert_eq!(result.names.len(), m.rank() - 1);
    for w in result.words_through(&t) {
        assert!(g.is_involution(&g.reduce(&w).unwrap()).unwrap());
    }
}

#[test]
fn decomposition_cases() {
    use SphericalType::*;
    for k in 1..=5 {
        assert_eq!(decomposition_case(I2(4 * k + 2)), DecompositionCase::CaseI {
            b_type: SphericalType::dihedral(2 * k + 1)
        });
        assert_eq!(decomposition_case(I2(4 * k + 4)), DecompositionCase::NoDecomposition);
    }
    assert_eq!(decomposition_case(C(3)), DecompositionCase::CasesDAndDBar { b_type: A(3) });
    assert_eq!(decomposition_case(C(5)), DecompositionCase::CasesDAndDBar { b_type: D(5) });
    assert_eq!(decomposition_case(C(4)), DecompositionCase::NoDecomposition);
    assert_eq!(decomposition_case(E7), DecompositionCase::CenterSplit);
    assert_eq!(decomposition_case(H3), DecompositionCase::CenterSplit);
    for t in [A(3), D(4), E6, E8, F4, H4] {
        assert_eq!(decomposition_case(t), DecompositionCase::NoDecomposition, "{t}");
    }
}
