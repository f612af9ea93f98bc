use std::fmt;

use crate::polyring::{CycloElem, SplitScalar};

use super::{GeomError, SurfaceCase};

/// Which coordinate the weight-2 equation of a line-type curve is a square of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    T,
    U,
    V,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::T, Family::U, Family::V];

    pub fn name(self) -> &'static str {
        match self {
            Family::T => "t",
            Family::U => "u",
            Family::V => "v",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Name of one of the 56 exceptional curves.
///
/// `delta` is the odd exponent `k` with `δ = ζᵏ`; triple entries are exponents
/// of `i`, taken modulo the diagonal `μ₂` by requiring `gamma ∈ {0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveLabel {
    Line {
        family: Family,
        delta: u8,
        sign: Sign,
    },
    Triple {
        alpha: u8,
        beta: u8,
        gamma: u8,
    },
}

impl CurveLabel {
    pub fn line(family: Family, delta: u8, sign: Sign) -> Self {
        debug_assert!(delta % 2 == 1 && delta < 8);
        CurveLabel::Line {
            family,
            delta,
            sign,
        }
    }

    /// Canonical representative of `(iᵃ, iᵇ, iᶜ)` modulo `μ₂`.
    pub fn triple(alpha: u8, beta: u8, gamma: u8) -> Self {
        let (a, b, c) = (alpha % 4, beta % 4, gamma % 4);
        if c >= 2 {
            CurveLabel::Triple {
                alpha: (a + 2) % 4,
                beta: (b + 2) % 4,
                gamma: c - 2,
            }
        } else {
            CurveLabel::Triple {
                alpha: a,
                beta: b,
                gamma: c,
            }
        }
    }

    /// All 56 labels in enumeration order.
    pub fn all() -> Vec<CurveLabel> {
        let mut out = Vec::with_capacity(56);
        for family in Family::ALL {
            for delta in [1u8, 3, 5, 7] {
                for sign in [Sign::Plus, Sign::Minus] {
                    out.push(CurveLabel::line(family, delta, sign));
                }
            }
        }
        for alpha in 0..4 {
            for beta in 0..4 {
                for gamma in 0..2 {
                    out.push(CurveLabel::Triple { alpha, beta, gamma });
                }
            }
        }
        out
    }
}

fn unit_name(k: u8) -> &'static str {
    ["1", "i", "-1", "-i"][k as usize % 4]
}

impl fmt::Display for CurveLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CurveLabel::Line {
                family,
                delta,
                sign,
            } => {
                let d = if delta == 1 {
                    "ζ".to_string()
                } else {
                    format!("ζ^{delta}")
                };
                write!(f, "l[{},{},{}]", family.name(), d, sign.symbol())
            }
            CurveLabel::Triple { alpha, beta, gamma } => write!(
                f,
                "l[{},{},{}]",
                unit_name(alpha),
                unit_name(beta),
                unit_name(gamma)
            ),
        }
    }
}

/// Linear form in `u, v, t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm(pub [SplitScalar; 3]);

/// Quadratic form in `u, v, t`; coefficient order `u², v², t², uv, vt, ut`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadForm(pub [SplitScalar; 6]);

const QUAD_INDEX: [(usize, usize); 6] = [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (0, 2)];

impl LinearForm {
    pub fn twist(&self, k: usize, shift: i64) -> Self {
        LinearForm(self.0.clone().map(|c| c.twist(k, shift)))
    }

    pub fn cross(&self, other: &LinearForm) -> [SplitScalar; 3] {
        let (a, b) = (&self.0, &other.0);
        [
            &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
            &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
            &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
        ]
    }

    pub fn is_proportional(&self, other: &LinearForm) -> bool {
        self.cross(other).iter().all(SplitScalar::is_zero)
    }

    /// Each of `u, v, t` as a combination of two free parameters `p, q` on
    /// `{L = 0}`, solving for a coefficient that is a unit.
    pub fn parametrize(&self) -> Result<[[SplitScalar; 2]; 3], GeomError> {
        let k = self.unit_pivot().ok_or(GeomError::NoUnitPivot)?;
        let inv = self.0[k].inverse().expect("unit pivot");
        let mut coord: [[SplitScalar; 2]; 3] = Default::default();
        for (slot, j) in (0..3).filter(|&j| j != k).enumerate() {
            coord[j][slot] = SplitScalar::one();
            coord[k][slot] = -&(&self.0[j] * &inv);
        }
        Ok(coord)
    }

    /// Index of a coefficient that is a unit of the Laurent ring.
    fn unit_pivot(&self) -> Option<usize> {
        (0..3).find(|&k| self.0[k].is_unit())
    }

    pub fn display_with(&self, names: [&str; 3]) -> String {
        let vars = ["u", "v", "t"];
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(vars)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, v)| format!("({})*{v}", c.display_with(names)))
            .collect();
        parts.join(" + ")
    }
}

impl QuadForm {
    pub fn zero() -> Self {
        QuadForm(Default::default())
    }

    pub fn twist(&self, k: usize, shift: i64) -> Self {
        QuadForm(self.0.clone().map(|c| c.twist(k, shift)))
    }

    pub fn sub(&self, other: &QuadForm) -> QuadForm {
        QuadForm([0, 1, 2, 3, 4, 5].map(|i| &self.0[i] - &other.0[i]))
    }

    pub fn eval(&self, p: &[SplitScalar; 3]) -> SplitScalar {
        QUAD_INDEX
            .iter()
            .zip(&self.0)
            .filter(|(_, c)| !c.is_zero())
            .fold(SplitScalar::zero(), |acc, (&(i, j), c)| {
                &acc + &(&(c * &p[i]) * &p[j])
            })
    }

    /// Restriction to the line `{L = 0}`: coefficients of `p², pq, q²` in the
    /// two free coordinates of [`LinearForm::parametrize`].
    pub fn restrict(&self, l: &LinearForm) -> Result<[SplitScalar; 3], GeomError> {
        let coord = l.parametrize()?;
        let mut out: [SplitScalar; 3] = Default::default();
        for (&(i, j), c) in QUAD_INDEX.iter().zip(&self.0) {
            if c.is_zero() {
                continue;
            }
            let (x, y) = (&coord[i], &coord[j]);
            out[0] = &out[0] + &(c * &(&x[0] * &y[0]));
            out[1] = &out[1] + &(c * &(&(&x[0] * &y[1]) + &(&x[1] * &y[0])));
            out[2] = &out[2] + &(c * &(&x[1] * &y[1]));
        }
        Ok(out)
    }

    pub fn display_with(&self, names: [&str; 3]) -> String {
        let mons = ["u^2", "v^2", "t^2", "u*v", "v*t", "u*t"];
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(mons)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, m)| format!("({})*{m}", c.display_with(names)))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// An exceptional curve `{L = 0, w = Q}` on the double plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalCurve {
    pub label: CurveLabel,
    pub line: LinearForm,
    pub weight2: QuadForm,
}

impl ExceptionalCurve {
    /// Same curve: proportional lines and `Q − Q'` vanishing on the line.
    pub fn same_curve(&self, other: &ExceptionalCurve) -> Result<bool, GeomError> {
        if !self.line.is_proportional(&other.line) {
            return Ok(false);
        }
        let diff = self.weight2.sub(&other.weight2).restrict(&self.line)?;
        Ok(diff.iter().all(SplitScalar::is_zero))
    }

    pub fn twist(&self, k: usize, shift: i64) -> (LinearForm, QuadForm) {
        (self.line.twist(k, shift), self.weight2.twist(k, shift))
    }

    pub fn equation_string(&self, case: SurfaceCase) -> String {
        let names = case.symbol_names();
        format!(
            "{}: {} = 0, w = {}",
            self.label,
            self.line.display_with(names),
            self.weight2.display_with(names)
        )
    }
}

fn sym(k: usize) -> SplitScalar {
    SplitScalar::symbol(k)
}

fn cst(c: CycloElem) -> SplitScalar {
    SplitScalar::constant(c)
}

fn mul_all(xs: &[SplitScalar]) -> SplitScalar {
    xs.iter().fold(SplitScalar::one(), |acc, x| &acc * x)
}

/// Equations of the curve with the given label.
pub fn curve_for_label(case: SurfaceCase, label: CurveLabel) -> ExceptionalCurve {
    let (a, b, third) = (sym(0), sym(1), sym(2));
    // third symbol: c, or √d in the C = ABd² case
    let zero = SplitScalar::zero;
    let mut q = QuadForm::zero();
    let line = match label {
        CurveLabel::Line {
            family,
            delta,
            sign,
        } => {
            let d = cst(CycloElem::zeta_pow(delta as i64));
            let s = cst(CycloElem::integer(sign.value()));
            match (case, family) {
                (SurfaceCase::NonSquare, Family::T) => {
                    q.0[2] = mul_all(&[s, third.pow(2)]);
                    [&d * &a, b.clone(), zero()]
                }
                (SurfaceCase::NonSquare, Family::U) => {
                    q.0[0] = mul_all(&[s, a.pow(2)]);
                    [zero(), &d * &b, third]
                }
                (SurfaceCase::NonSquare, Family::V) => {
                    q.0[1] = mul_all(&[s, b.pow(2)]);
                    [a.clone(), zero(), &d * &third]
                }
                (SurfaceCase::SquareD, Family::T) => {
                    q.0[2] = mul_all(&[s, third.pow(2), a.pow(2), b.pow(2)]);
                    [&d * &a, b.clone(), zero()]
                }
                (SurfaceCase::SquareD, Family::U) => {
                    q.0[0] = mul_all(&[s, a.pow(2)]);
                    [zero(), d, &a * &third]
                }
                (SurfaceCase::SquareD, Family::V) => {
                    q.0[1] = mul_all(&[s, b.pow(2)]);
                    [SplitScalar::one(), zero(), mul_all(&[d, b.clone(), third])]
                }
            }
        }
        CurveLabel::Triple { alpha, beta, gamma } => {
            let al = cst(CycloElem::i_pow(alpha as i64));
            let be = cst(CycloElem::i_pow(beta as i64));
            let ga = cst(CycloElem::i_pow(gamma as i64));
            let r2 = cst(CycloElem::sqrt2());
            // the coefficient of t plays the role of c
            let c_like = match case {
                SurfaceCase::NonSquare => third,
                SurfaceCase::SquareD => mul_all(&[a.clone(), b.clone(), third]),
            };
            q.0[3] = mul_all(&[r2.clone(), al.clone(), be.clone(), a.clone(), b.clone()]);
            q.0[4] = mul_all(&[
                r2.clone(),
                be.clone(),
                ga.clone(),
                b.clone(),
                c_like.clone(),
            ]);
            q.0[5] = mul_all(&[r2, al.clone(), ga.clone(), a.clone(), c_like.clone()]);
            [&al * &a, &be * &b, &ga * &c_like]
        }
    };
    ExceptionalCurve {
        label,
        line: LinearForm(line),
        weight2: q,
    }
}

/// The 56 exceptional curves: 8 in each of the families `t, u, v` and 32
/// indexed by `μ₄³/μ₂`.
pub fn enumerate_curves(case: SurfaceCase) -> Vec<ExceptionalCurve> {
    CurveLabel::all()
        .into_iter()
        .map(|l| curve_for_label(case, l))
        .collect()
}

/// Intersection number of two exceptional curves.
///
/// Equal curves get −1. Curves over the same line meet in the roots of
/// `Q − Q'` along it (two, counted with multiplicity). Otherwise the lines meet
/// in one point `P` of the plane and the curves meet above it iff
/// `Q(P) = Q'(P)`; a common value of zero lies on the branch curve and is
/// reported as ambiguous.
pub fn intersection_number(c1: &ExceptionalCurve, c2: &ExceptionalCurve) -> Result<i32, GeomError> {
    if c1.line.is_proportional(&c2.line) {
        let diff = c1.weight2.sub(&c2.weight2).restrict(&c1.line)?;
        return Ok(if diff.iter().all(SplitScalar::is_zero) {
            -1
        } else {
            2
        });
    }
    let p = c1.line.cross(&c2.line);
    let q1 = c1.weight2.eval(&p);
    let q2 = c2.weight2.eval(&p);
    if q1 != q2 {
        return Ok(0);
    }
    if q1.is_zero() {
        return Err(GeomError::AmbiguousTangency(c1.label, c2.label));
    }
    Ok(1)
}
