//! Reference matrices, action tables and distinguished vectors shipped with
//! the crate (`data/golden.toml`), plus a cell-by-cell matrix diff.

use std::sync::OnceLock;

use serde::Deserialize;

use crate::dp2geom::{CurveLabel, GaloisGenerator, Sign, SurfaceCase};
use crate::exactalg::IntMatrix;

const GOLDEN_TOML: &str = include_str!("../data/golden.toml");

#[derive(Debug, Clone, Deserialize)]
pub struct GoldenMatrix {
    pub case: String,
    pub generator: String,
    pub rows: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
pub struct LineAction {
    pub delta_i_power: u8,
    pub flip: bool,
}

/// One column of an action table: the rule for each curve family.
#[derive(Debug, Clone, Deserialize)]
pub struct ActionRow {
    pub case: String,
    pub generator: String,
    pub t: LineAction,
    pub u: LineAction,
    pub v: LineAction,
    pub triple: [u8; 3],
}

#[derive(Debug, Clone, Deserialize)]
pub struct GoldenVectors {
    pub mu: Vec<i64>,
    pub kappa: Vec<i64>,
    pub two_mu: Vec<i64>,
    pub orbit_of_u: Vec<String>,
}

/// Rational spanning set stored as integer numerators over `denominator`.
#[derive(Debug, Clone, Deserialize)]
pub struct GoldenSpan {
    pub name: String,
    pub denominator: i64,
    pub vectors: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Golden {
    pub matrix: Vec<GoldenMatrix>,
    pub action: Vec<ActionRow>,
    pub vectors: GoldenVectors,
    pub span: Vec<GoldenSpan>,
}

/// One mismatching entry of a matrix comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellDiff {
    pub row: usize,
    pub col: usize,
    pub expected: String,
    pub actual: String,
}

impl Golden {
    pub fn parse(text: &str) -> Result<Golden, toml::de::Error> {
        toml::from_str(text)
    }

    /// The bundled data, parsed once.
    pub fn bundled() -> &'static Golden {
        static CELL: OnceLock<Golden> = OnceLock::new();
        CELL.get_or_init(|| Golden::parse(GOLDEN_TOML).expect("bundled golden data parses"))
    }

    pub fn matrix(&self, case: SurfaceCase, generator: GaloisGenerator) -> Option<IntMatrix> {
        self.matrix
            .iter()
            .find(|m| m.case == case.name() && m.generator == generator.name())
            .map(|m| IntMatrix::from_rows(&m.rows))
    }

    pub fn action(&self, case: SurfaceCase, generator: GaloisGenerator) -> Option<&ActionRow> {
        self.action
            .iter()
            .find(|a| a.case == case.name() && a.generator == generator.name())
    }

    pub fn span(&self, name: &str) -> Option<&GoldenSpan> {
        self.span.iter().find(|s| s.name == name)
    }
}

impl ActionRow {
    /// Image of `label` predicted by this table column.
    pub fn image(&self, label: CurveLabel) -> CurveLabel {
        match label {
            CurveLabel::Line {
                family,
                delta,
                sign,
            } => {
                let rule = match family {
                    crate::dp2geom::Family::T => self.t,
                    crate::dp2geom::Family::U => self.u,
                    crate::dp2geom::Family::V => self.v,
                };
                let sign: Sign = if rule.flip { sign.flip() } else { sign };
                CurveLabel::line(family, (delta + 2 * rule.delta_i_power) % 8, sign)
            }
            CurveLabel::Triple { alpha, beta, gamma } => CurveLabel::triple(
                alpha + self.triple[0],
                beta + self.triple[1],
                gamma + self.triple[2],
            ),
        }
    }
}

/// Entries where `actual` differs from `expected`; a shape mismatch is
/// reported as a single cell at `(rows, cols)` of the larger matrix.
pub fn diff_matrices(expected: &IntMatrix, actual: &IntMatrix) -> Vec<CellDiff> {
    if expected.nrows() != actual.nrows() || expected.ncols() != actual.ncols() {
        return vec![CellDiff {
            row: expected.nrows().max(actual.nrows()),
            col: expected.ncols().max(actual.ncols()),
            expected: format!("{}x{}", expected.nrows(), expected.ncols()),
            actual: format!("{}x{}", actual.nrows(), actual.ncols()),
        }];
    }
    let mut out = Vec::new();
    for r in 0..expected.nrows() {
        for c in 0..expected.ncols() {
            if expected[(r, c)] != actual[(r, c)] {
                out.push(CellDiff {
                    row: r,
                    col: c,
                    expected: expected[(r, c)].to_string(),
                    actual: actual[(r, c)].to_string(),
                });
            }
        }
    }
    out
}
