use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::exactalg::{solve_integral, IntMatrix};

use super::curves::{curve_for_label, enumerate_curves, intersection_number};
use super::{CurveLabel, ExceptionalCurve, Family, GaloisGenerator, GeomError, Sign, SurfaceCase};

/// Coordinates of a divisor class in the basis `v₁, …, v₈`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PicClass(pub Vec<BigInt>);

impl PicClass {
    pub fn from_i64(v: &[i64]) -> Self {
        PicClass(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.0
            .iter()
            .map(|x| i64::try_from(x).expect("class coordinate fits in i64"))
            .collect()
    }

    pub fn pairing(&self, other: &PicClass, gram: &IntMatrix) -> BigInt {
        let gy = gram.mul_vec(&other.0);
        self.0.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &PicClass) -> PicClass {
        PicClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for PicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Curves making up the basis vectors: `v₁ … v₇` are single curves and
/// `v₈ = [ℓ_{t,ζ⁷,−}] + [ℓ_{t,ζ³,−}] + [ℓ_{i,i,i}]`.
pub fn basis_labels() -> [Vec<CurveLabel>; 8] {
    let l = CurveLabel::line;
    let iii = CurveLabel::triple(1, 1, 1);
    [
        vec![l(Family::U, 1, Sign::Plus)],
        vec![l(Family::U, 3, Sign::Minus)],
        vec![l(Family::V, 1, Sign::Plus)],
        vec![l(Family::V, 3, Sign::Minus)],
        vec![l(Family::T, 1, Sign::Plus)],
        vec![l(Family::T, 3, Sign::Minus)],
        vec![iii],
        vec![
            l(Family::T, 7, Sign::Minus),
            l(Family::T, 3, Sign::Minus),
            iii,
        ],
    ]
}

fn basis_curves(case: SurfaceCase) -> Vec<Vec<ExceptionalCurve>> {
    basis_labels()
        .iter()
        .map(|ls| ls.iter().map(|&l| curve_for_label(case, l)).collect())
        .collect()
}

fn pairing_with_basis(
    c: &ExceptionalCurve,
    basis: &[Vec<ExceptionalCurve>],
) -> Result<Vec<BigInt>, GeomError> {
    basis
        .iter()
        .map(|parts| {
            parts.iter().try_fold(
                BigInt::zero(),
                |acc, p| Ok(acc + intersection_number(c, p)?),
            )
        })
        .collect()
}

fn gram_from(basis: &[Vec<ExceptionalCurve>]) -> Result<IntMatrix, GeomError> {
    let mut rows = Vec::with_capacity(8);
    for parts in basis {
        let mut row = vec![BigInt::zero(); 8];
        for p in parts {
            for (slot, x) in row.iter_mut().zip(pairing_with_basis(p, basis)?) {
                *slot += x;
            }
        }
        rows.push(row);
    }
    Ok(IntMatrix::from_big_rows(8, rows))
}

/// Gram matrix of `v₁, …, v₈`, extended bilinearly over the three-term `v₈`.
pub fn gram_basis(case: SurfaceCase) -> Result<IntMatrix, GeomError> {
    gram_from(&basis_curves(case))
}

fn class_from(
    c: &ExceptionalCurve,
    basis: &[Vec<ExceptionalCurve>],
    gram: &IntMatrix,
) -> Result<PicClass, GeomError> {
    let b = pairing_with_basis(c, basis)?;
    solve_integral(gram, &b)?
        .map(PicClass)
        .ok_or(GeomError::NonIntegralClass(c.label))
}

/// The unique `x` with `Gx = (⟨c, v₁⟩, …, ⟨c, v₈⟩)`.
pub fn class_in_basis(case: SurfaceCase, c: &ExceptionalCurve) -> Result<PicClass, GeomError> {
    let basis = basis_curves(case);
    let gram = gram_from(&basis)?;
    class_from(c, &basis, &gram)
}

fn kappa_from(gram: &IntMatrix) -> Result<PicClass, GeomError> {
    let b: Vec<BigInt> = [1, 1, 1, 1, 1, 1, 1, 3].map(BigInt::from).to_vec();
    let x = solve_integral(gram, &b)?.expect("unimodular Gram matrix");
    Ok(PicClass(x))
}

/// `−K`: pairs to 1 with every exceptional curve, hence 3 with `v₈`.
pub fn anticanonical_class(case: SurfaceCase) -> Result<PicClass, GeomError> {
    kappa_from(&gram_basis(case)?)
}

fn find_image(
    case: SurfaceCase,
    generator: GaloisGenerator,
    c: &ExceptionalCurve,
    curves: &[ExceptionalCurve],
) -> Result<usize, GeomError> {
    let (k, shift) = generator.twist_data(case)?;
    let (line, weight2) = c.twist(k, shift);
    let image = ExceptionalCurve {
        label: c.label,
        line,
        weight2,
    };
    for (j, cand) in curves.iter().enumerate() {
        if image.same_curve(cand)? {
            return Ok(j);
        }
    }
    Err(GeomError::NoMatch {
        curve: c.label,
        generator,
    })
}

/// Applies `σ` to the coefficients of `(L, Q)` and identifies the image among
/// the enumerated curves.
pub fn apply_galois(
    case: SurfaceCase,
    generator: GaloisGenerator,
    c: &ExceptionalCurve,
) -> Result<ExceptionalCurve, GeomError> {
    let curves = enumerate_curves(case);
    let j = find_image(case, generator, c, &curves)?;
    Ok(curves[j].clone())
}

/// Matrix of `σ` on the Picard lattice; column `j` is the class of `σ(vⱼ)`.
pub fn galois_matrix(
    generator: GaloisGenerator,
    case: SurfaceCase,
) -> Result<IntMatrix, GeomError> {
    PicardModel::build(case)?.galois_matrix(generator)
}

/// All curve data of one surface case, computed once.
#[derive(Clone, Debug)]
pub struct PicardModel {
    case: SurfaceCase,
    curves: Vec<ExceptionalCurve>,
    index: HashMap<CurveLabel, usize>,
    intersections: Vec<Vec<i32>>,
    gram: IntMatrix,
    classes: Vec<PicClass>,
    kappa: PicClass,
}

impl PicardModel {
    pub fn build(case: SurfaceCase) -> Result<Self, GeomError> {
        let curves = enumerate_curves(case);
        let index = curves
            .iter()
            .enumerate()
            .map(|(i, c)| (c.label, i))
            .collect();
        // upper triangle only; the pairing is symmetric
        let upper = (0..curves.len())
            .into_par_iter()
            .map(|i| {
                curves[i..]
                    .iter()
                    .map(|d| intersection_number(&curves[i], d))
                    .collect::<Result<Vec<i32>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let n = curves.len();
        let mut intersections = vec![vec![0; n]; n];
        for (i, row) in upper.iter().enumerate() {
            for (k, &x) in row.iter().enumerate() {
                intersections[i][i + k] = x;
                intersections[i + k][i] = x;
            }
        }
        let basis = basis_curves(case);
        let gram = gram_from(&basis)?;
        let classes = curves
            .par_iter()
            .map(|c| class_from(c, &basis, &gram))
            .collect::<Result<Vec<_>, _>>()?;
        let kappa = kappa_from(&gram)?;
        Ok(Self {
            case,
            curves,
            index,
            intersections,
            gram,
            classes,
            kappa,
        })
    }

    pub fn case(&self) -> SurfaceCase {
        self.case
    }

    pub fn curves(&self) -> &[ExceptionalCurve] {
        &self.curves
    }

    pub fn index_of(&self, label: CurveLabel) -> Result<usize, GeomError> {
        self.index
            .get(&label)
            .copied()
            .ok_or(GeomError::UnknownLabel(label))
    }

    /// The 56×56 matrix of geometric intersection numbers.
    pub fn intersection_matrix(&self) -> &[Vec<i32>] {
        &self.intersections
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn classes(&self) -> &[PicClass] {
        &self.classes
    }

    pub fn class_of(&self, label: CurveLabel) -> Result<&PicClass, GeomError> {
        Ok(&self.classes[self.index_of(label)?])
    }

    pub fn anticanonical(&self) -> &PicClass {
        &self.kappa
    }

    /// `σ` as a permutation of curve indices.
    pub fn galois_permutation(&self, generator: GaloisGenerator) -> Result<Vec<usize>, GeomError> {
        self.curves
            .iter()
            .map(|c| find_image(self.case, generator, c, &self.curves))
            .collect()
    }

    pub fn apply_galois(
        &self,
        generator: GaloisGenerator,
        label: CurveLabel,
    ) -> Result<CurveLabel, GeomError> {
        let c = &self.curves[self.index_of(label)?];
        Ok(self.curves[find_image(self.case, generator, c, &self.curves)?].label)
    }

    pub fn galois_matrix(&self, generator: GaloisGenerator) -> Result<IntMatrix, GeomError> {
        let mut m = IntMatrix::zeros(8, 8);
        for (j, parts) in basis_labels().iter().enumerate() {
            let mut col = PicClass(vec![BigInt::zero(); 8]);
            for &label in parts {
                let image = self.apply_galois(generator, label)?;
                col = col.add(self.class_of(image)?);
            }
            m.set_column(j, &col.0);
        }
        Ok(m)
    }
}
