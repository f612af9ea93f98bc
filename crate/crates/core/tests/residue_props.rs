mod common;

use common::form;
use dp2_core::brauer_residue::{residue, DivisorialValuation, SquareClass, SymbolClass};
use dp2_core::polyring::{FpPoly, PrimeField, Var};
use proptest::prelude::*;

const P: u64 = 13;

fn field() -> PrimeField {
    PrimeField::new(P).unwrap()
}

fn line() -> impl Strategy<Value = FpPoly> {
    prop::collection::vec(0..P, 3)
        .prop_map(|c| form(P, 1, &c))
        .prop_filter("nonzero", |l| !l.is_zero())
}

/// A form with a random power of the centre in it, so valuations are not all 0.
fn form_near(centre: FpPoly) -> impl Strategy<Value = FpPoly> {
    (prop::collection::vec(0..P, 1..7), 1u32..3, 0u32..3).prop_filter_map(
        "nonzero",
        move |(c, d, k)| {
            let f = &form(P, d, &c) * &centre.pow(k);
            (!f.is_zero()).then_some(f)
        },
    )
}

fn class(a: &FpPoly, b: &FpPoly, v: &DivisorialValuation) -> SquareClass {
    residue(&SymbolClass::new(a.clone(), b.clone()).unwrap(), v).unwrap()
}

fn setup() -> impl Strategy<Value = (FpPoly, FpPoly, FpPoly, FpPoly)> {
    line().prop_flat_map(|l| {
        (
            Just(l.clone()),
            form_near(l.clone()),
            form_near(l.clone()),
            form_near(l),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn f_minus_f_is_trivial((l, f, _, _) in setup()) {
        let v = DivisorialValuation::new(&l).unwrap();
        prop_assert!(class(&f, &f.scale(P - 1), &v).is_trivial());
        let inf = DivisorialValuation::infinity(field());
        prop_assert!(class(&f, &f.scale(P - 1), &inf).is_trivial());
    }

    #[test]
    fn f_times_square_is_trivial((l, f, h, _) in setup()) {
        let v = DivisorialValuation::new(&l).unwrap();
        let b = &f * &(&h * &h);
        prop_assert!(class(&f, &b, &v).is_trivial());
    }

    #[test]
    fn steinberg((l, f, _, _) in setup()) {
        // f and z^d − f stand for f and 1 − f
        let d = f.plane_degree().unwrap();
        let one_minus = &FpPoly::var(field(), Var::Z).pow(d) - &f;
        prop_assume!(!one_minus.is_zero());
        for v in [DivisorialValuation::new(&l).unwrap(), DivisorialValuation::infinity(field())] {
            prop_assert!(class(&f, &one_minus, &v).is_trivial(), "{} at {}", f, v);
        }
    }

    #[test]
    fn bilinear((l, a1, a2, b) in setup()) {
        let v = DivisorialValuation::new(&l).unwrap();
        let lhs = class(&(&a1 * &a2), &b, &v);
        let rhs = class(&a1, &b, &v).mul(&class(&a2, &b, &v)).unwrap();
        prop_assert!(lhs.same_class(&rhs).unwrap());
    }

    #[test]
    fn antisymmetric((l, a, b, _) in setup()) {
        let v = DivisorialValuation::new(&l).unwrap();
        prop_assert!(class(&a, &b, &v).same_class(&class(&b, &a, &v)).unwrap());
    }

    #[test]
    fn square_multiplier_invariance((l, a, b, h) in setup()) {
        let v = DivisorialValuation::new(&l).unwrap();
        let ah2 = &a * &(&h * &h);
        prop_assert!(class(&ah2, &b, &v).same_class(&class(&a, &b, &v)).unwrap());
    }
}
