mod common;

use common::{eval_form, form, plane_points};
use dp2_core::polyring::{linear_coefficients, normalize_point, FpPoly, PrimeField};
use dp2_core::refvar::{
    build_equation, check_conditions, local_certificates, ArrangementConfig, Condition, Witness,
};
use proptest::prelude::*;

const P: u64 = 13;

fn line() -> impl Strategy<Value = FpPoly> {
    prop::collection::vec(0..P, 3)
        .prop_map(|c| form(P, 1, &c))
        .prop_filter("nonzero", |l| !l.is_zero())
}

fn arrangement() -> impl Strategy<Value = ArrangementConfig> {
    (
        prop::collection::vec(line(), 4),
        prop::collection::vec(0..P, 6),
        0u32..4,
    )
        .prop_filter_map("valid", |(lines, fc, half_m)| {
            let f = form(P, 2, &fc);
            let field = PrimeField::new(P).unwrap();
            ArrangementConfig::new(
                field,
                2,
                2,
                2 * half_m,
                lines[..2].to_vec(),
                lines[2..].to_vec(),
                f,
            )
            .ok()
        })
}

fn on(l: &FpPoly, pt: [u64; 3]) -> bool {
    eval_form(l, pt) == 0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn conditions_match_brute_force(cfg in arrangement()) {
        let field = cfg.field;
        let lines: Vec<FpPoly> = cfg.lines().cloned().collect();
        let pts = plane_points(P);
        let report = check_conditions(&cfg).unwrap();
        let k = lines.len();

        let norm = |l: &FpPoly| normalize_point(field, linear_coefficients(l).unwrap());
        let distinct = (0..k).all(|i| (i + 1..k).all(|j| norm(&lines[i]) != norm(&lines[j])));
        prop_assert_eq!(report.get(Condition::I).passed, distinct);

        let concurrent = (0..k).any(|i| (i + 1..k).any(|j| (j + 1..k).any(|l| {
            pts.iter().any(|&pt| on(&lines[i], pt) && on(&lines[j], pt) && on(&lines[l], pt))
        })));
        prop_assert_eq!(report.get(Condition::II).passed, !concurrent);

        let in_f = lines.iter().any(|l| pts.iter().filter(|&&pt| on(l, pt)).all(|&pt| eval_form(&cfg.f, pt) == 0));
        prop_assert_eq!(report.get(Condition::III).passed, !in_f);

        // every witness re-fails on its own
        for w in &report.get(Condition::IV).witnesses {
            let Witness::VanishingPoint { i, j, point } = w else { panic!("{w:?}") };
            prop_assert!(on(&lines[*i], *point) && on(&lines[*j], *point));
            prop_assert_eq!(eval_form(&cfg.f, *point), 0);
        }
        let n = cfg.a_factors.len();
        let vanishing = (0..n).any(|i| (n..k).any(|j| {
            norm(&lines[i]) != norm(&lines[j])
                && pts.iter().any(|&pt| on(&lines[i], pt) && on(&lines[j], pt) && eval_form(&cfg.f, pt) == 0)
        }));
        prop_assert_eq!(report.get(Condition::IV).passed, !vanishing);

        // a square takes values in a single square class
        if !report.get(Condition::V).passed {
            let s = cfg.ab_plus_f();
            let classes: std::collections::HashSet<bool> = pts
                .iter()
                .map(|&pt| eval_form(&s, pt))
                .filter(|&x| x != 0)
                .map(|x| field.is_square(x))
                .collect();
            prop_assert!(classes.len() <= 1);
        }
    }

    #[test]
    fn first_four_imply_local_cases(cfg in arrangement()) {
        let report = check_conditions(&cfg).unwrap();
        let first_four = [Condition::I, Condition::II, Condition::III, Condition::IV]
            .iter()
            .all(|&c| report.get(c).passed);
        if first_four {
            let local = local_certificates(&cfg).unwrap();
            prop_assert!(local.case(1).all(|c| c.passed));
            prop_assert!(local.case(3).all(|c| c.passed));
        }
    }

    #[test]
    fn equation_is_bihomogeneous(cfg in arrangement()) {
        let eq = build_equation(&cfg);
        prop_assert!(eq.bidegree_ok);
        prop_assert_eq!(eq.bidegree, (8 + cfg.m, 4));
    }
}
