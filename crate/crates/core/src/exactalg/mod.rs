//! Exact integer linear algebra: Hermite and Smith normal forms, integer
//! kernels, saturation, sublattice intersection and integral solving.
//!
//! Every routine works over arbitrary-precision integers; there is no
//! floating point and no modular shortcut anywhere in this module.

mod lattice;
mod matrix;

pub use lattice::{index_in, intersect, saturate, IntLattice};
pub(crate) use matrix::ext_gcd;
pub use matrix::IntMatrix;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("matrix must have positive dimensions")]
    EmptyMatrix,
    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("matrix is singular over the rationals")]
    Singular,
    #[error("lattices live in different ambient ranks ({0} vs {1})")]
    AmbientMismatch(usize, usize),
}

/// Row Hermite normal form: returns `(H, U)` with `H = U·M`, `U` unimodular.
///
/// Pivots of `H` are positive, entries above a pivot lie in `[0, pivot)` and
/// zero rows sit at the bottom.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = m.nrows();
    let cols = m.ncols();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        for r in pivot_row + 1..rows {
            if h[(r, col)].is_zero() {
                continue;
            }
            let a = h[(pivot_row, col)].clone();
            let b = h[(r, col)].clone();
            let (g, s, t) = ext_gcd(&a, &b);
            let za = -(&b / &g);
            let zb = &a / &g;
            h.combine_rows(pivot_row, r, [&s, &t, &za, &zb]);
            u.combine_rows(pivot_row, r, [&s, &t, &za, &zb]);
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        let pivot = h[(pivot_row, col)].clone();
        for r in 0..pivot_row {
            let q = h[(r, col)].div_floor(&pivot);
            if !q.is_zero() {
                let k = -q;
                h.add_row_multiple(r, pivot_row, &k);
                u.add_row_multiple(r, pivot_row, &k);
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Smith invariants `d₁ | d₂ | … `, one per diagonal position
/// (`min(rows, cols)` entries), zeros last.
pub fn snf(m: &IntMatrix) -> Vec<BigInt> {
    let n = m.nrows().min(m.ncols());
    let mut a = m.clone();
    let mut out = Vec::with_capacity(n);
    for t in 0..n {
        let Some((pi, pj)) = min_abs_nonzero(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        loop {
            let pivot = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..a.nrows() {
                let q = a[(i, t)].div_floor(&pivot);
                a.add_row_multiple(i, t, &-q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..a.ncols() {
                let q = a[(t, j)].div_floor(&pivot);
                a.add_col_multiple(j, t, &-q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                // a smaller remainder appeared in the pivot row/column
                let (bi, bj) = min_abs_cross(&a, t);
                a.swap_rows(t, bi);
                a.swap_cols(t, bj);
                continue;
            }
            let bad = (t + 1..a.nrows())
                .find(|&i| (t + 1..a.ncols()).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match bad {
                Some(i) => a.add_row_multiple(t, i, &BigInt::one()),
                None => break,
            }
        }
        out.push(a[(t, t)].abs());
    }
    out.resize(n, BigInt::zero());
    out
}

fn min_abs_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.nrows() {
        for j in t..a.ncols() {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn min_abs_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let candidates = (t..a.nrows())
        .map(|i| (i, t))
        .chain((t + 1..a.ncols()).map(|j| (t, j)));
    for (i, j) in candidates {
        let v = &a[(i, j)];
        if !v.is_zero() && (a[best].is_zero() || v.abs() < a[best].abs()) {
            best = (i, j);
        }
    }
    best
}

/// Saturated integer kernel `{x ∈ ℤⁿ : M·x = 0}`.
pub fn kernel_basis(m: &IntMatrix) -> IntLattice {
    let n = m.ncols();
    if m.nrows() == 0 {
        return IntLattice::full(n);
    }
    let (h, u) = hnf(&m.transpose());
    let rank = h
        .rows_iter()
        .take_while(|r| r.iter().any(|x| !x.is_zero()))
        .count();
    let gens: Vec<Vec<BigInt>> = (rank..n).map(|i| u.row(i).to_vec()).collect();
    IntLattice::from_generators(n, gens)
}

/// Solves `G·x = b` over ℤ. `Ok(None)` means the rational solution is not
/// integral; a singular `G` is an error.
pub fn solve_integral(g: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinAlgError> {
    if !g.is_square() {
        return Err(LinAlgError::NotSquare(g.nrows(), g.ncols()));
    }
    if b.len() != g.nrows() {
        return Err(LinAlgError::DimensionMismatch {
            expected: (g.nrows(), 1),
            found: (b.len(), 1),
        });
    }
    let x = solve_rational(g, b).ok_or(LinAlgError::Singular)?;
    Ok(x.into_iter()
        .map(|q| q.is_integer().then(|| q.to_integer()))
        .collect())
}

/// Gauss–Jordan over ℚ for a square system; `None` if singular.
pub(crate) fn solve_rational(g: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigRational>> {
    let n = g.nrows();
    let mut a = g.to_rational_rows();
    for (row, rhs) in a.iter_mut().zip(b) {
        row.push(BigRational::from_integer(rhs.clone()));
    }
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v -= &f * pv;
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_row_hnf(h: &IntMatrix) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for r in 0..h.nrows() {
            let row = h.row(r);
            match row.iter().position(|x| !x.is_zero()) {
                None => seen_zero = true,
                Some(c) => {
                    if seen_zero || last_pivot.is_some_and(|p| c <= p) || !row[c].is_positive() {
                        return false;
                    }
                    for rr in 0..r {
                        let e = &h[(rr, c)];
                        if e.is_negative() || e >= &row[c] {
                            return false;
                        }
                    }
                    last_pivot = Some(c);
                }
            }
        }
        true
    }

    #[test]
    fn hnf_identity() {
        let i = IntMatrix::identity(3);
        let (h, u) = hnf(&i);
        assert_eq!(h, i);
        assert_eq!(u, i);
    }

    #[test]
    fn hnf_two_by_two() {
        let m = IntMatrix::from_rows(&[[2, 4], [1, 3]]);
        let (h, u) = hnf(&m);
        assert_eq!(&u * &m, h);
        assert_eq!(u.determinant().unwrap().abs(), BigInt::one());
        assert!(is_row_hnf(&h));
        assert!(h[(1, 0)].is_zero());
        // determinant 2, so the pivots multiply to 2
        assert_eq!(&h[(0, 0)] * &h[(1, 1)], BigInt::from(2));
    }

    #[test]
    fn hnf_zero_row() {
        let m = IntMatrix::from_rows(&[[0, 0]]);
        let (h, u) = hnf(&m);
        assert_eq!(h, m);
        assert_eq!(u, IntMatrix::identity(1));
    }

    #[test]
    fn snf_examples() {
        let d = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(snf(&IntMatrix::diagonal(&[2, 3])), d(&[1, 6]));
        assert_eq!(snf(&IntMatrix::diagonal(&[1, 1])), d(&[1, 1]));
        assert_eq!(snf(&IntMatrix::diagonal(&[2, 2])), d(&[2, 2]));
        assert_eq!(snf(&IntMatrix::from_rows(&[[0, 0], [0, 0]])), d(&[0, 0]));
        assert_eq!(
            snf(&IntMatrix::from_rows(&[
                [2, 4, 4],
                [-6, 6, 12],
                [10, -4, -16]
            ])),
            d(&[2, 6, 12])
        );
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&IntMatrix::from_rows(&[[1, 1]]));
        assert_eq!(k.rank(), 1);
        assert_eq!(k, IntLattice::from_i64_rows(2, &[[1, -1]]));
        let z = kernel_basis(&IntMatrix::diagonal(&[2, 2]));
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn solve_examples() {
        let i = IntMatrix::identity(3);
        let b: Vec<BigInt> = [4, -2, 7].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(solve_integral(&i, &b).unwrap(), Some(b.clone()));
        let two = IntMatrix::from_rows(&[[2]]);
        assert_eq!(solve_integral(&two, &[BigInt::one()]).unwrap(), None);
        let sing = IntMatrix::from_rows(&[[1, 2], [2, 4]]);
        assert_eq!(
            solve_integral(&sing, &[BigInt::one(), BigInt::one()]),
            Err(LinAlgError::Singular)
        );
    }
}
