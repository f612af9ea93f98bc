mod common;

use common::{check_exactalg, det, Mat};
use dp2_core::exactalg::{hnf, index_in, saturate, snf, IntLattice, IntMatrix};
use num_bigint::BigInt;
use proptest::prelude::*;

fn matrix(max_dim: usize) -> impl Strategy<Value = Mat> {
    (1..=max_dim, 1..=max_dim)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-5i64..=5, c), r))
}

fn pair(max_dim: usize) -> impl Strategy<Value = (Mat, Mat)> {
    (1..=max_dim, 1..=max_dim, 1..=max_dim).prop_flat_map(|(r1, r2, c)| {
        (
            prop::collection::vec(prop::collection::vec(-5i64..=5, c), r1),
            prop::collection::vec(prop::collection::vec(-5i64..=5, c), r2),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn agrees_with_brute_force((m, other) in pair(5)) {
        prop_assert_eq!(check_exactalg(&m, &other), Ok(()));
    }

    #[test]
    fn smith_invariants_divide(m in matrix(5)) {
        let s = snf(&IntMatrix::from_rows(&m));
        for w in s.windows(2) {
            prop_assert!(w[1] == BigInt::from(0) || (&w[1] % &w[0]) == BigInt::from(0));
        }
    }

    #[test]
    fn hnf_is_canonical(m in matrix(4), seed in prop::collection::vec(-2i64..=2, 6)) {
        // left-multiplying by a unimodular matrix leaves the row HNF unchanged
        let r = m.len();
        let mut u = IntMatrix::identity(r);
        for (k, &c) in seed.iter().enumerate() {
            if r < 2 { break; }
            let (i, j) = (k % r, (k + 1) % r);
            let mut e = IntMatrix::identity(r).to_rows();
            e[i][j] = BigInt::from(c);
            u = &IntMatrix::from_big_rows(r, e) * &u;
        }
        let im = IntMatrix::from_rows(&m);
        prop_assert_eq!(hnf(&(&u * &im)).0, hnf(&im).0);
    }

    #[test]
    fn square_lattice_index_is_determinant(m in (1usize..=4).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-5i64..=5, n), n))) {
        let d = det(&m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect::<Vec<_>>());
        let n = m.len();
        let l = IntLattice::from_i64_rows(n, &m);
        let idx = index_in(&l, &IntLattice::full(n)).unwrap();
        if d == 0 {
            prop_assert_eq!(idx, None);
        } else {
            prop_assert_eq!(idx, Some(BigInt::from(d.abs())));
        }
    }

    #[test]
    fn saturation_is_idempotent_and_contains(m in matrix(5)) {
        let cols = m[0].len();
        let l = IntLattice::from_i64_rows(cols, &m);
        let s = saturate(&l);
        prop_assert!(s.contains_lattice(&l));
        prop_assert_eq!(saturate(&s).clone(), s.clone());
        prop_assert_eq!(s.rank(), l.rank());
    }
}
