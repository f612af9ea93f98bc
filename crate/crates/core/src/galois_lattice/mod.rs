//! Finite matrix groups acting on the Picard lattice: closure, invariant
//! sublattices, orbits of the 56 curves and the sublattice spanned by orbit
//! sums.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::dp2geom::{CurveLabel, GeomError, PicClass, PicardModel, SurfaceCase};
use crate::exactalg::{
    ext_gcd, index_in, kernel_basis, solve_rational, IntLattice, IntMatrix, LinAlgError,
};

pub const DEFAULT_CLOSURE_BOUND: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("group closure exceeded {0} elements")]
    NotFinite(usize),
    #[error("no generators supplied")]
    NoGenerators,
    #[error("matrix determined by the permutation action is not integral")]
    NonIntegral,
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// A finite group of integer matrices given by generators and its full list
/// of elements (identity first).
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    generators: Vec<IntMatrix>,
    elements: Vec<IntMatrix>,
}

impl MatrixGroup {
    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|g| self.generators.iter().all(|h| (g * h) == (h * g)))
    }

    /// `MᵀGM = G` for every element.
    pub fn preserves(&self, gram: &IntMatrix) -> bool {
        self.elements
            .iter()
            .all(|m| &(&m.transpose() * gram) * m == *gram)
    }
}

/// Closure under multiplication by the generators; finite groups need no
/// explicit inverses.
pub fn group_closure(gens: &[IntMatrix], bound: usize) -> Result<MatrixGroup, LatticeError> {
    let first = gens.first().ok_or(LatticeError::NoGenerators)?;
    let id = IntMatrix::identity(first.nrows());
    let mut seen: HashSet<IntMatrix> = HashSet::from([id.clone()]);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g * &x;
            if seen.insert(y.clone()) {
                if seen.len() > bound {
                    return Err(LatticeError::NotFinite(bound));
                }
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(MatrixGroup {
        generators: gens.to_vec(),
        elements,
    })
}

/// Saturated kernel of the stacked `M − I` over the generators.
pub fn invariant_sublattice(g: &MatrixGroup) -> IntLattice {
    let n = g.generators[0].nrows();
    let id = IntMatrix::identity(n);
    let stacked = g
        .generators
        .iter()
        .map(|m| m - &id)
        .reduce(|a, b| a.stack(&b))
        .expect("at least one generator");
    kernel_basis(&stacked)
}

/// Orbits of the group generated by the permutations `perms` on
/// `0..n`; each orbit ascending, orbits ordered by least element.
pub fn orbits(perms: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            for p in perms {
                if !seen[p[x]] {
                    seen[p[x]] = true;
                    orbit.push(p[x]);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

pub fn orbit_sum(orbit: &[usize], classes: &[PicClass]) -> PicClass {
    let n = classes[0].0.len();
    orbit
        .iter()
        .fold(PicClass(vec![BigInt::zero(); n]), |acc, &i| {
            acc.add(&classes[i])
        })
}

/// Lattice generated by all orbit sums of curve classes together with `κ`.
pub fn orbit_sum_sublattice(
    orbits: &[Vec<usize>],
    classes: &[PicClass],
    kappa: &PicClass,
) -> IntLattice {
    let n = kappa.0.len();
    let mut gens: Vec<Vec<BigInt>> = orbits.iter().map(|o| orbit_sum(o, classes).0).collect();
    gens.push(kappa.0.clone());
    IntLattice::from_generators(n, gens)
}

/// Matrix of a permutation of curves as a linear map: fixed on a maximal
/// independent set of curve classes, then checked on all of them.
pub fn matrix_from_permutation(
    perm: &[usize],
    classes: &[PicClass],
) -> Result<IntMatrix, LatticeError> {
    let n = classes[0].0.len();
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (i, c) in classes.iter().enumerate() {
        let mut trial = rows.clone();
        trial.push(c.0.clone());
        if IntMatrix::from_big_rows(n, trial.clone()).rank() == trial.len() {
            rows = trial;
            chosen.push(i);
        }
        if chosen.len() == n {
            break;
        }
    }
    if chosen.len() < n {
        return Err(LinAlgError::Singular.into());
    }
    // M·C = C' with columns of C the chosen classes; row r of M solves Cᵀ m = (C' row r)ᵀ
    let ct = IntMatrix::from_big_rows(n, rows);
    let mut m_rows = Vec::with_capacity(n);
    for r in 0..n {
        let b: Vec<BigInt> = chosen
            .iter()
            .map(|&i| classes[perm[i]].0[r].clone())
            .collect();
        let x = solve_rational(&ct, &b).ok_or(LinAlgError::Singular)?;
        let row: Option<Vec<BigInt>> = x
            .into_iter()
            .map(|q| q.is_integer().then(|| q.to_integer()))
            .collect();
        m_rows.push(row.ok_or(LatticeError::NonIntegral)?);
    }
    let m = IntMatrix::from_big_rows(n, m_rows);
    for (i, c) in classes.iter().enumerate() {
        if m.mul_vec(&c.0) != classes[perm[i]].0 {
            return Err(LatticeError::NonIntegral);
        }
    }
    Ok(m)
}

/// Full invariant computation for one surface case.
#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub case: SurfaceCase,
    pub group_order: usize,
    pub invariant: IntLattice,
    pub rank: usize,
    pub kappa: PicClass,
    /// A complement of `κ` in a rank-2 invariant lattice.
    pub mu: Option<PicClass>,
    pub orbits: Vec<Vec<CurveLabel>>,
    pub orbit_sums: IntLattice,
    /// `[invariant : orbit sums + ℤκ]`.
    pub orbit_index: Option<BigInt>,
    pub mu_in_orbit_sums: Option<bool>,
    pub warnings: Vec<String>,
}

fn preferred_mu() -> PicClass {
    PicClass::from_i64(&[0, 0, 0, 0, 0, 0, -1, 1])
}

/// A vector completing `κ` to a basis of the rank-2 lattice `inv`.
fn complement(inv: &IntLattice, kappa: &PicClass) -> Option<PicClass> {
    let c = inv.coordinates(&kappa.0)?;
    let (g, x, y) = ext_gcd(&c[0], &c[1]);
    if !g.is_one() {
        return None;
    }
    // det [[c0, c1], [−y, x]] = 1
    let b = inv.basis_vectors();
    Some(PicClass(
        b[0].iter()
            .zip(&b[1])
            .map(|(p, q)| -&y * p + &x * q)
            .collect(),
    ))
}

pub fn invariant_report(case: SurfaceCase) -> Result<InvariantReport, LatticeError> {
    invariant_report_with(&PicardModel::build(case)?, DEFAULT_CLOSURE_BOUND)
}

pub fn invariant_report_with(
    model: &PicardModel,
    bound: usize,
) -> Result<InvariantReport, LatticeError> {
    let case = model.case();
    let gens = case.generators();
    let mats = gens
        .iter()
        .map(|&g| model.galois_matrix(g))
        .collect::<Result<Vec<_>, _>>()?;
    let group = group_closure(&mats, bound)?;
    let invariant = invariant_sublattice(&group);
    let rank = invariant.rank();
    let kappa = model.anticanonical().clone();
    let mut warnings = Vec::new();

    let mu = if rank == 2 {
        let pref = preferred_mu();
        let pair = IntLattice::from_generators(8, vec![kappa.0.clone(), pref.0.clone()]);
        if invariant.contains(&pref.0) && index_in(&pair, &invariant)? == Some(BigInt::one()) {
            Some(pref)
        } else {
            warnings.push(
                "(0,0,0,0,0,0,-1,1) is not invariant; reporting another complement of κ".into(),
            );
            complement(&invariant, &kappa)
        }
    } else {
        None
    };

    let perms = gens
        .iter()
        .map(|&g| model.galois_permutation(g))
        .collect::<Result<Vec<_>, _>>()?;
    let orbit_idx = orbits(&perms, model.curves().len());
    let orbit_sums = orbit_sum_sublattice(&orbit_idx, model.classes(), &kappa);
    let orbit_index = index_in(&orbit_sums, &invariant)?;
    let mu_in_orbit_sums = mu.as_ref().map(|m| orbit_sums.contains(&m.0));
    let orbits = orbit_idx
        .iter()
        .map(|o| o.iter().map(|&i| model.curves()[i].label).collect())
        .collect();
    Ok(InvariantReport {
        case,
        group_order: group.order(),
        invariant,
        rank,
        kappa,
        mu,
        orbits,
        orbit_sums,
        orbit_index,
        mu_in_orbit_sums,
        warnings,
    })
}
