//! The 56 exceptional curves of the diagonal degree-2 del Pezzo surface
//! `w² = Au⁴ + Bv⁴ + Ct⁴`, their intersection pairing, their classes in a
//! fixed basis of the Picard lattice, and the Galois action on all of it.
//!
//! Coefficients live in ℚ(ζ₈) adjoined three independent root symbols: the
//! fourth roots `a, b, c` of `A, B, C`, or `a, b, √d` when `C = ABd²`.

mod curves;
mod norm;
mod picard;

use std::fmt;

use thiserror::Error;

use crate::exactalg::LinAlgError;
use crate::polyring::SplitScalar;

pub use curves::{
    curve_for_label, enumerate_curves, intersection_number, CurveLabel, ExceptionalCurve, Family,
    LinearForm, QuadForm, Sign,
};
pub use norm::{
    verify_norm_identity, verify_norm_identity_with, IdentityCheck, NormIdentityReport,
};
pub use picard::{
    anticanonical_class, apply_galois, basis_labels, class_in_basis, galois_matrix, gram_basis,
    PicClass, PicardModel,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("ambiguous tangency: {0} and {1} meet on the branch curve")]
    AmbiguousTangency(CurveLabel, CurveLabel),
    #[error("linear form has no unit coefficient to solve for")]
    NoUnitPivot,
    #[error("image of {curve} under {generator} is not among the 56 curves")]
    NoMatch {
        curve: CurveLabel,
        generator: GaloisGenerator,
    },
    #[error("{generator} does not act in the {case} case")]
    IncompatibleGenerator {
        generator: GaloisGenerator,
        case: SurfaceCase,
    },
    #[error("class of {0} has non-integral coordinates")]
    NonIntegralClass(CurveLabel),
    #[error("unknown curve label {0}")]
    UnknownLabel(CurveLabel),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceCase {
    /// Generic `A, B, C` with roots `a, b, c`.
    NonSquare,
    /// `C = ABd²` with roots `a, b, √d`.
    SquareD,
}

impl SurfaceCase {
    pub const ALL: [SurfaceCase; 2] = [SurfaceCase::NonSquare, SurfaceCase::SquareD];

    pub fn name(self) -> &'static str {
        match self {
            SurfaceCase::NonSquare => "nonsquare",
            SurfaceCase::SquareD => "square-d",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "nonsquare" => Some(SurfaceCase::NonSquare),
            "square-d" => Some(SurfaceCase::SquareD),
            _ => None,
        }
    }

    pub fn symbol_names(self) -> [&'static str; 3] {
        match self {
            SurfaceCase::NonSquare => ["a", "b", "c"],
            SurfaceCase::SquareD => ["a", "b", "√d"],
        }
    }

    pub fn generators(self) -> Vec<GaloisGenerator> {
        match self {
            SurfaceCase::NonSquare => vec![
                GaloisGenerator::IotaA,
                GaloisGenerator::IotaB,
                GaloisGenerator::IotaC,
            ],
            SurfaceCase::SquareD => vec![
                GaloisGenerator::IotaA,
                GaloisGenerator::IotaB,
                GaloisGenerator::IotaSqrtD,
            ],
        }
    }

    /// Coefficients of `u⁴, v⁴, t⁴` in terms of the root symbols.
    pub fn quartic_coefficients(self) -> [SplitScalar; 3] {
        let s = SplitScalar::symbol;
        match self {
            SurfaceCase::NonSquare => [s(0).pow(4), s(1).pow(4), s(2).pow(4)],
            SurfaceCase::SquareD => [s(0).pow(4), s(1).pow(4), (&(&s(0) * &s(1)) * &s(2)).pow(4)],
        }
    }

    /// `Au⁴ + Bv⁴ + Ct⁴` on `{L = 0}` as a binary quartic: coefficients of
    /// `p⁴, p³q, p²q², pq³, q⁴`.
    pub fn branch_quartic_on_line(self, l: &LinearForm) -> Result<[SplitScalar; 5], GeomError> {
        let coord = l.parametrize()?;
        let binom = [1i64, 4, 6, 4, 1];
        let mut out: [SplitScalar; 5] = Default::default();
        for (c, x) in self.quartic_coefficients().iter().zip(&coord) {
            for (k, slot) in out.iter_mut().enumerate() {
                let term = &(&x[0].pow(4 - k as u32) * &x[1].pow(k as u32))
                    * &SplitScalar::constant(crate::polyring::CycloElem::integer(binom[k]));
                *slot = &*slot + &(c * &term);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for SurfaceCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Field automorphism fixing ℚ(ζ₈) and multiplying one root symbol by a root
/// of unity: `a ↦ ia`, `b ↦ ib`, `c ↦ ic`, or `√d ↦ −√d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GaloisGenerator {
    IotaA,
    IotaB,
    IotaC,
    IotaSqrtD,
}

impl GaloisGenerator {
    pub const ALL: [GaloisGenerator; 4] = [
        GaloisGenerator::IotaA,
        GaloisGenerator::IotaB,
        GaloisGenerator::IotaC,
        GaloisGenerator::IotaSqrtD,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GaloisGenerator::IotaA => "iota_a",
            GaloisGenerator::IotaB => "iota_b",
            GaloisGenerator::IotaC => "iota_c",
            GaloisGenerator::IotaSqrtD => "iota_sqrt_d",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|g| g.name() == s)
    }

    /// Order of the automorphism on the splitting field.
    pub fn order(self) -> u32 {
        match self {
            GaloisGenerator::IotaSqrtD => 2,
            _ => 4,
        }
    }

    /// Root symbol moved and the power of `ζ` it is multiplied by.
    pub fn twist_data(self, case: SurfaceCase) -> Result<(usize, i64), GeomError> {
        match (self, case) {
            (GaloisGenerator::IotaA, _) => Ok((0, 2)),
            (GaloisGenerator::IotaB, _) => Ok((1, 2)),
            (GaloisGenerator::IotaC, SurfaceCase::NonSquare) => Ok((2, 2)),
            (GaloisGenerator::IotaSqrtD, SurfaceCase::SquareD) => Ok((2, 4)),
            _ => Err(GeomError::IncompatibleGenerator {
                generator: self,
                case,
            }),
        }
    }
}

impl fmt::Display for GaloisGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GaloisGenerator::IotaA => "ι_a",
            GaloisGenerator::IotaB => "ι_b",
            GaloisGenerator::IotaC => "ι_c",
            GaloisGenerator::IotaSqrtD => "ι_√d",
        })
    }
}
