use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{hnf, kernel_basis, snf, IntMatrix, LinAlgError};

/// A sublattice of ℤⁿ, stored by its row Hermite normal form basis so that
/// equality does not depend on the generators it was built from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntLattice {
    ambient: usize,
    basis: IntMatrix,
}

impl IntLattice {
    /// Lattice spanned by arbitrary (possibly dependent) generators.
    pub fn from_generators(ambient: usize, gens: Vec<Vec<BigInt>>) -> Self {
        if gens.is_empty() {
            return Self::zero(ambient);
        }
        let m = IntMatrix::from_big_rows(ambient, gens);
        Self::from_matrix_rows(&m)
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(ambient: usize, rows: &[R]) -> Self {
        if rows.is_empty() {
            return Self::zero(ambient);
        }
        let m = IntMatrix::from_rows(rows);
        assert_eq!(m.ncols(), ambient);
        Self::from_matrix_rows(&m)
    }

    pub fn from_matrix_rows(m: &IntMatrix) -> Self {
        let ambient = m.ncols();
        if m.nrows() == 0 {
            return Self::zero(ambient);
        }
        let (h, _) = hnf(m);
        let rows: Vec<Vec<BigInt>> = h
            .rows_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .map(|r| r.to_vec())
            .collect();
        let basis = if rows.is_empty() {
            IntMatrix::empty(ambient)
        } else {
            IntMatrix::from_big_rows(ambient, rows)
        };
        Self { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: IntMatrix::empty(ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            basis: IntMatrix::identity(ambient),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    /// HNF basis, one vector per row.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<BigInt>> {
        self.basis.to_rows()
    }

    /// Integer coordinates of `v` in the HNF basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient);
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for r in 0..self.rank() {
            let row = self.basis.row(r);
            let pc = row.iter().position(|x| !x.is_zero()).unwrap();
            // earlier pivots already cleared every column left of pc
            if rest[..pc].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, rem) = rest[pc].div_rem(&row[pc]);
            if !rem.is_zero() {
                return None;
            }
            for (x, b) in rest.iter_mut().zip(row) {
                *x -= &q * b;
            }
            coords.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &IntLattice) -> bool {
        other.basis.rows_iter().all(|r| self.contains(r))
    }

    pub fn is_saturated(&self) -> bool {
        saturate(self) == *self
    }
}

/// `(L ⊗ ℚ) ∩ ℤⁿ`, computed as the kernel of the orthogonal complement.
pub fn saturate(l: &IntLattice) -> IntLattice {
    if l.rank() == 0 {
        return l.clone();
    }
    let complement = kernel_basis(l.basis());
    if complement.rank() == 0 {
        return IntLattice::full(l.ambient);
    }
    kernel_basis(complement.basis())
}

/// `L1 ∩ L2` via the integer kernel of the block matrix `[B1ᵀ | −B2ᵀ]`:
/// each kernel vector `(x, y)` gives the common element `x·B1 = y·B2`.
pub fn intersect(l1: &IntLattice, l2: &IntLattice) -> Result<IntLattice, LinAlgError> {
    if l1.ambient != l2.ambient {
        return Err(LinAlgError::AmbientMismatch(l1.ambient, l2.ambient));
    }
    let n = l1.ambient;
    if l1.rank() == 0 || l2.rank() == 0 {
        return Ok(IntLattice::zero(n));
    }
    let block = l1
        .basis
        .transpose()
        .hconcat(&l2.basis.transpose().scale(&-BigInt::one()));
    let kernel = kernel_basis(&block);
    let r1 = l1.rank();
    let gens = kernel
        .basis()
        .rows_iter()
        .map(|k| {
            let mut v = vec![BigInt::zero(); n];
            for (coef, row) in k[..r1].iter().zip(l1.basis.rows_iter()) {
                for (acc, b) in v.iter_mut().zip(row) {
                    *acc += coef * b;
                }
            }
            v
        })
        .collect();
    Ok(IntLattice::from_generators(n, gens))
}

/// `[sup : sub]` when `sub ⊆ sup` with finite index, as the product of the
/// Smith invariants of the change-of-basis matrix.
pub fn index_in(sub: &IntLattice, sup: &IntLattice) -> Result<Option<BigInt>, LinAlgError> {
    if sub.ambient != sup.ambient {
        return Err(LinAlgError::AmbientMismatch(sub.ambient, sup.ambient));
    }
    if sub.rank() != sup.rank() {
        return Ok(None);
    }
    if sub.rank() == 0 {
        return Ok(Some(BigInt::one()));
    }
    let mut change = Vec::with_capacity(sub.rank());
    for row in sub.basis.rows_iter() {
        match sup.coordinates(row) {
            Some(c) => change.push(c),
            None => return Ok(None),
        }
    }
    let c = IntMatrix::from_big_rows(sup.rank(), change);
    let index: BigInt = snf(&c).iter().product();
    Ok((!index.is_zero()).then_some(index))
}
