use num_bigint::BigInt;
use proptest::prelude::*;

use regent_core::group::{FinSubset, PreorderedGroup, ZdElement, ZdGroup};
use regent_core::instances;
use regent_core::number_ring::hnf::{hnf_with_transform, is_hnf, solve_upper, ROWS};
use regent_core::number_ring::{membership_witness, replay_witness, CubicField, FieldElement};
use regent_core::regularisation::lcd_decide;

fn plane() -> ZdGroup {
    ZdGroup::cone(
        2,
        vec![ZdElement::from_i64s(&[1, 0]), ZdElement::from_i64s(&[1, 2])],
    )
    .unwrap()
}

fn pt() -> impl Strategy<Value = ZdElement> {
    (-40i64..=40, -40i64..=40).prop_map(|(a, b)| ZdElement::from_i64s(&[a, b]))
}

fn field_el() -> impl Strategy<Value = FieldElement> {
    prop::array::uniform3(-9i64..=9).prop_map(|c| FieldElement::from_integers(&c))
}

proptest! {
    #[test]
    fn exa1_order_is_translation_invariant(a in -500i64..500, b in -500i64..500, x in -500i64..500) {
        let g = instances::exa1_group();
        let (a, b, x) = (g.int(a), g.int(b), g.int(x));
        prop_assert_eq!(g.leq(&a, &b), g.leq(&g.add(&a, &x), &g.add(&b, &x)));
        prop_assert_eq!(g.add(&a, &g.neg(&a)), g.zero());
    }

    #[test]
    fn plane_order_is_a_preorder(a in pt(), b in pt(), c in pt()) {
        let g = plane();
        prop_assert!(g.leq(&a, &a));
        if g.leq(&a, &b) && g.leq(&b, &c) {
            prop_assert!(g.leq(&a, &c));
        }
        if let Some(m) = g.cone_membership(&g.sub(&b, &a)) {
            prop_assert!(m.iter().all(|x| *x >= BigInt::from(0)));
            prop_assert_eq!(g.combination(&m, g.generators()), g.sub(&b, &a));
        }
    }

    #[test]
    fn lcd_decisions_replay(c in prop::collection::vec(pt(), 1..4)) {
        let g = plane();
        let c = FinSubset::new(c).unwrap();
        prop_assert!(lcd_decide(&g, &c).replays(&g, &c));
    }

    #[test]
    fn hnf_spans_the_input_lattice(cols in prop::collection::vec(prop::array::uniform3(-20i64..=20), 3..6)) {
        let cols: Vec<[BigInt; ROWS]> = cols.iter().map(|c| c.map(BigInt::from)).collect();
        let Ok((h, transform)) = hnf_with_transform(&cols) else {
            return Ok(());
        };
        prop_assert!(is_hnf(&h));
        for (k, t) in transform.iter().enumerate() {
            for r in 0..ROWS {
                let combo: BigInt = cols.iter().zip(t).map(|(c, x)| &c[r] * x).sum();
                prop_assert_eq!(&combo, &h[r][k]);
            }
        }
        for c in &cols {
            prop_assert!(solve_upper(&h, c).is_some());
        }
    }

    #[test]
    fn field_arithmetic(a in field_el(), b in field_el()) {
        let f = CubicField::shipped();
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        if !b.is_zero() {
            prop_assert_eq!(f.div(&f.mul(&a, &b), &b).unwrap(), a.clone());
            prop_assert_eq!(f.mul(&b, &f.inv(&b).unwrap()), f.one());
        }
    }

    #[test]
    fn ideal_membership_witnesses_replay(gens in prop::collection::vec(field_el(), 1..3), coeffs in prop::collection::vec(field_el(), 2)) {
        let f = CubicField::shipped();
        prop_assume!(gens.iter().all(|g| !g.is_zero()));
        let a = gens.iter().zip(&coeffs).fold(f.zero(), |acc, (g, o)| f.add(&acc, &f.mul(g, o)));
        let w = membership_witness(&f, &gens, &a).unwrap();
        prop_assert!(w.is_some());
        prop_assert!(replay_witness(&f, &gens, &w.unwrap(), &a));
    }

    #[test]
    fn subsets_are_sorted_sets_and_round_trip(xs in prop::collection::vec(pt(), 1..8)) {
        let s = FinSubset::new(xs.clone()).unwrap();
        prop_assert!(s.elements().windows(2).all(|w| w[0] < w[1]));
        prop_assert!(xs.iter().all(|x| s.contains(x)));
        let back: FinSubset<ZdElement> = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        prop_assert_eq!(back, s);
    }
}
