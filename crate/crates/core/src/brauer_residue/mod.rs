//! Residues of two-torsion quaternion symbols `(A, B)` over `k(x, y)` along
//! divisorial valuations centred on curves of ℙ².
//!
//! Forms `F(x, y, z)` of degree `d` stand for the functions `F(x, y, 1)`, so
//! the line at infinity `z` gets valuation `mult_z(F) − d`. Square classes are
//! taken modulo constants, as over an algebraically closed ground field.

use std::fmt;

use thiserror::Error;

use crate::polyring::{
    is_square_mod_constants, kernel3, linear_coefficients, quadratic_matrix, restrict_to_line,
    split_quadratic, squarefree_decomposition, FpPoly, PolyError, PrimeField, Var, NVARS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResidueError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("the zero polynomial has no valuation")]
    ZeroPolynomial,
    #[error("'{0}' is not a nonconstant form in x, y, z")]
    NotAForm(String),
    #[error("'{0}' has degree above 2; only lines and conics are supported as centres")]
    UnsupportedDegree(String),
    #[error("'{0}' is reducible over the algebraic closure and is not the centre of a valuation")]
    NotAbsolutelyIrreducible(String),
    #[error("residue undefined along {0}: the representative vanishes on the centre; multiply A or B by a square and retry")]
    ResidueUndefined(String),
    #[error("square classes along different centres ({0} and {1})")]
    CentreMismatch(String, String),
    #[error("forms live over different prime fields")]
    FieldMismatch,
}

/// The symbol `(A, B) ∈ H²(k(x, y), ℤ/2)` given by two nonzero forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolClass {
    pub a: FpPoly,
    pub b: FpPoly,
}

fn form_degree(f: &FpPoly) -> Result<u32, ResidueError> {
    if f.is_zero() {
        return Err(ResidueError::ZeroPolynomial);
    }
    if f.variables().iter().any(|v| !Var::PLANE.contains(v)) {
        return Err(PolyError::NotPlanar(f.to_string()).into());
    }
    f.plane_degree()
        .ok_or_else(|| PolyError::NotHomogeneous(f.to_string()).into())
}

impl SymbolClass {
    pub fn new(a: FpPoly, b: FpPoly) -> Result<Self, ResidueError> {
        form_degree(&a)?;
        form_degree(&b)?;
        if a.prime() != b.prime() {
            return Err(ResidueError::FieldMismatch);
        }
        Ok(Self { a, b })
    }

    pub fn field(&self) -> PrimeField {
        self.a.field()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CentreKind {
    Line,
    /// The line `z = 0`.
    Infinity,
    Conic,
}

/// Valuation of `k(x, y)` along an absolutely irreducible line or conic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorialValuation {
    centre: FpPoly,
    kind: CentreKind,
    /// A rational point of a conic centre.
    base_point: Option<[u64; 3]>,
}

impl DivisorialValuation {
    pub fn new(p: &FpPoly) -> Result<Self, ResidueError> {
        let deg = form_degree(p)?;
        let centre = p.monic();
        match deg {
            0 => Err(ResidueError::NotAForm(p.to_string())),
            1 => {
                let [a, b, _] = linear_coefficients(&centre)?;
                let kind = if a == 0 && b == 0 {
                    CentreKind::Infinity
                } else {
                    CentreKind::Line
                };
                Ok(Self {
                    centre,
                    kind,
                    base_point: None,
                })
            }
            2 => {
                let field = p.field();
                let (rank, _) = kernel3(field, quadratic_matrix(&centre));
                if rank < 3 {
                    return Err(ResidueError::NotAbsolutelyIrreducible(p.to_string()));
                }
                let base_point = Some(conic_point(&centre));
                Ok(Self {
                    centre,
                    kind: CentreKind::Conic,
                    base_point,
                })
            }
            _ => Err(ResidueError::UnsupportedDegree(p.to_string())),
        }
    }

    /// The line at infinity `z = 0`.
    pub fn infinity(field: PrimeField) -> Self {
        Self::new(&FpPoly::var(field, Var::Z)).expect("z is a line")
    }

    pub fn centre(&self) -> &FpPoly {
        &self.centre
    }

    pub fn kind(&self) -> CentreKind {
        self.kind
    }

    pub fn degree(&self) -> u32 {
        match self.kind {
            CentreKind::Conic => 2,
            _ => 1,
        }
    }

    /// The form restricted to the centre, as a binary form in `x, y`.
    fn restrict(&self, f: &FpPoly) -> Result<FpPoly, ResidueError> {
        match self.kind {
            CentreKind::Conic => Ok(restrict_to_conic(f, &self.centre, self.base_point.unwrap())),
            _ => Ok(restrict_to_line(f, &self.centre)?.form),
        }
    }
}

impl fmt::Display for DivisorialValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v[{}]", self.centre)
    }
}

/// A rational point of a smooth conic: scan `x = a, z = 1` and solve for `y`,
/// falling back to points at infinity.
fn conic_point(q: &FpPoly) -> [u64; 3] {
    let field = q.field();
    let p = field.modulus();
    let quad_in_y = |x: u64, z: u64| -> Option<[u64; 3]> {
        // q(x, y, z) = c2 y² + c1 y + c0
        let c0 = q.evaluate_plane([x, 0, z]);
        let at1 = q.evaluate_plane([x, 1, z]);
        let atm1 = q.evaluate_plane([x, p - 1, z]);
        let half = field.inv(2);
        let c2 = field.mul(field.sub(field.add(at1, atm1), field.add(c0, c0)), half);
        let c1 = field.mul(field.sub(at1, atm1), half);
        if c2 == 0 {
            if c1 == 0 {
                return (c0 == 0).then_some([x, 0, z]);
            }
            return Some([x, field.mul(field.neg(c0), field.inv(c1)), z]);
        }
        let disc = field.sub(field.mul(c1, c1), field.mul(4, field.mul(c2, c0)));
        let s = field.sqrt(disc)?;
        let y = field.mul(field.sub(s, c1), field.inv(field.mul(2, c2)));
        Some([x, y, z])
    };
    for x in 0..p {
        if let Some(pt) = quad_in_y(x, 1) {
            return pt;
        }
        if x == 0 {
            if let Some(pt) = quad_in_y(1, 0) {
                return pt;
            }
        }
    }
    // q(0, 1, 0) = 0
    [0, 1, 0]
}

/// Pulls `f` back along the parametrization of the conic by lines through
/// `base`: `s·P₁ + r·P₂ ↦ q(Q)·base − 2·B(base, Q)·Q` with `Q = s·P₁ + r·P₂`.
fn restrict_to_conic(f: &FpPoly, q: &FpPoly, base: [u64; 3]) -> FpPoly {
    let field = f.field();
    // a line avoiding base
    let axis = (0..3).find(|&i| base[i] != 0).unwrap();
    let mut p1 = [0u64; 3];
    let mut p2 = [0u64; 3];
    p1[(axis + 1) % 3] = 1;
    p2[(axis + 2) % 3] = 1;
    let s = FpPoly::var(field, Var::X);
    let r = FpPoly::var(field, Var::Y);
    let qpt: Vec<FpPoly> = (0..3).map(|i| &s.scale(p1[i]) + &r.scale(p2[i])).collect();
    let plane_subs = |pts: &[FpPoly]| {
        let mut subs: [Option<FpPoly>; NVARS] = Default::default();
        for (i, v) in Var::PLANE.into_iter().enumerate() {
            subs[v.index()] = Some(pts[i].clone());
        }
        subs
    };
    let q_of_q = q.substitute(&plane_subs(&qpt));
    let m = quadratic_matrix(q);
    let mut bilinear = FpPoly::zero(field);
    for i in 0..3 {
        for (j, qj) in qpt.iter().enumerate() {
            bilinear = &bilinear + &qj.scale(field.mul(base[i], m[i][j]));
        }
    }
    let two_b = bilinear.scale(2);
    let image: Vec<FpPoly> = (0..3)
        .map(|i| &q_of_q.scale(base[i]) - &(&two_b * &qpt[i]))
        .collect();
    f.substitute(&plane_subs(&image))
}

fn multiplicity(f: &FpPoly, p: &FpPoly) -> (u32, FpPoly) {
    let mut rest = f.clone();
    let mut m = 0;
    while let Some(q) = rest.div_exact(p) {
        rest = q;
        m += 1;
    }
    (m, rest)
}

/// `v(f)`; additive in `f`.
pub fn valuation(f: &FpPoly, v: &DivisorialValuation) -> Result<i64, ResidueError> {
    let deg = form_degree(f)?;
    let (m, _) = multiplicity(f, &v.centre);
    Ok(match v.kind {
        CentreKind::Infinity => m as i64 - deg as i64,
        _ => m as i64,
    })
}

/// Element of `κ(v)^×` modulo squares and constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareClass {
    pub centre: DivisorialValuation,
    /// Form whose restriction represents the class.
    pub representative: FpPoly,
    /// The representative on the centre, a binary form in `x, y`.
    pub restricted: FpPoly,
    /// Exponent of the constant `−1`; never affects triviality.
    pub sign_exponent: i64,
}

impl SquareClass {
    pub fn is_trivial(&self) -> bool {
        self.restricted.is_constant() || is_square_mod_constants(&self.restricted)
    }

    pub fn mul(&self, other: &SquareClass) -> Result<SquareClass, ResidueError> {
        if self.centre.centre != other.centre.centre {
            return Err(ResidueError::CentreMismatch(
                self.centre.to_string(),
                other.centre.to_string(),
            ));
        }
        Ok(SquareClass {
            centre: self.centre.clone(),
            representative: &self.representative * &other.representative,
            restricted: &self.restricted * &other.restricted,
            sign_exponent: self.sign_exponent + other.sign_exponent,
        })
    }

    pub fn same_class(&self, other: &SquareClass) -> Result<bool, ResidueError> {
        Ok(self.mul(other)?.is_trivial())
    }
}

pub fn square_class_trivial(c: &SquareClass) -> bool {
    c.is_trivial()
}

/// Values needed to audit a residue computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueReport {
    pub v_a: i64,
    pub v_b: i64,
    pub class: SquareClass,
}

/// `∂_v(A, B) = (−1)^{v(A)v(B)} A^{v(B)} / B^{v(A)}` restricted to the centre.
///
/// Writing `A = π^{v(A)}·A₀·(aux)^{−deg A₀}` with `A₀` prime to the centre and
/// `aux` a form nonvanishing on it (`z`, or `x` at infinity), the class is that
/// of `A₀^{v(B)}·B₀^{v(A)}·aux^{D}` with `D = deg A₀·v(B) + deg B₀·v(A)`,
/// all exponents taken mod 2.
pub fn residue_report(
    s: &SymbolClass,
    v: &DivisorialValuation,
) -> Result<ResidueReport, ResidueError> {
    if s.field() != v.centre.field() {
        return Err(ResidueError::FieldMismatch);
    }
    let field = s.field();
    let (_, a0) = multiplicity(&s.a, &v.centre);
    let (_, b0) = multiplicity(&s.b, &v.centre);
    let v_a = valuation(&s.a, v)?;
    let v_b = valuation(&s.b, v)?;
    let deg_a0 = form_degree(&a0)? as i64;
    let deg_b0 = form_degree(&b0)? as i64;
    let d = deg_a0 * v_b + deg_b0 * v_a;
    // z vanishes identically only on the line z = 0
    let aux = match v.kind {
        CentreKind::Infinity => FpPoly::var(field, Var::X),
        _ => FpPoly::var(field, Var::Z),
    };
    let odd = |e: i64| e.rem_euclid(2) as u32;
    let representative = &(&a0.pow(odd(v_b)) * &b0.pow(odd(v_a))) * &aux.pow(odd(d));
    let restricted = v.restrict(&representative)?;
    // unreachable for irreducible centres: every factor is prime to the centre
    if restricted.is_zero() {
        return Err(ResidueError::ResidueUndefined(v.to_string()));
    }
    Ok(ResidueReport {
        v_a,
        v_b,
        class: SquareClass {
            centre: v.clone(),
            representative,
            restricted,
            sign_exponent: v_a * v_b,
        },
    })
}

pub fn residue(s: &SymbolClass, v: &DivisorialValuation) -> Result<SquareClass, ResidueError> {
    Ok(residue_report(s, v)?.class)
}

/// Irreducible components of a form of degree ≤ 2 per squarefree part
/// (split over 𝔽_p where possible, else kept as a conic).
pub fn candidate_centres(f: &FpPoly) -> Result<Vec<DivisorialValuation>, ResidueError> {
    let mut out: Vec<DivisorialValuation> = Vec::new();
    for (part, _) in squarefree_decomposition(f).parts {
        let deg = form_degree(&part)?;
        let comps = match deg {
            0 => vec![],
            1 => vec![part],
            2 => match split_quadratic(&part) {
                Ok(split) => split.factors,
                Err(PolyError::NotSplit(_)) => vec![part],
                Err(e) => return Err(e.into()),
            },
            _ => return Err(ResidueError::UnsupportedDegree(part.to_string())),
        };
        for c in comps {
            let v = DivisorialValuation::new(&c)?;
            if !out.iter().any(|w| w.centre == v.centre) {
                out.push(v);
            }
        }
    }
    Ok(out)
}

/// Residues along the components of `A`, `B` and the line at infinity, kept
/// where nontrivial. Every other centre has `v(A) = v(B) = 0`.
pub fn ramification_divisor(
    s: &SymbolClass,
) -> Result<Vec<(DivisorialValuation, SquareClass)>, ResidueError> {
    let mut centres = candidate_centres(&s.a)?;
    for v in candidate_centres(&s.b)? {
        if !centres.iter().any(|w| w.centre == v.centre) {
            centres.push(v);
        }
    }
    let inf = DivisorialValuation::infinity(s.field());
    if !centres.iter().any(|w| w.centre == inf.centre) {
        centres.push(inf);
    }
    ramification_on(s, &centres)
}

/// As [`ramification_divisor`] over an explicit list of centres.
pub fn ramification_on(
    s: &SymbolClass,
    centres: &[DivisorialValuation],
) -> Result<Vec<(DivisorialValuation, SquareClass)>, ResidueError> {
    let mut out = Vec::new();
    for v in centres {
        let c = residue(s, v)?;
        if !c.is_trivial() {
            out.push((v.clone(), c));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse, Domain};

    fn poly(s: &str) -> FpPoly {
        parse(s, &Domain::plane(13).unwrap()).unwrap()
    }

    fn val(s: &str) -> DivisorialValuation {
        DivisorialValuation::new(&poly(s)).unwrap()
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&poly("(x-3*z)^2"), &val("x-3*z")).unwrap(), 2);
        assert_eq!(valuation(&poly("x^2+x*z+z^2"), &val("x-3*z")).unwrap(), 1);
        assert_eq!(valuation(&poly("y"), &val("x-3*z")).unwrap(), 0);
        assert_eq!(valuation(&poly("x^2+x*z+z^2"), &val("z")).unwrap(), -2);
        assert_eq!(valuation(&poly("x*z"), &val("z")).unwrap(), -1);
        assert_eq!(valuation(&poly("3"), &val("z")).unwrap(), 0);
    }

    #[test]
    fn residue_along_factor_of_a_is_b() {
        let s = SymbolClass::new(poly("x^2+x*z+z^2"), poly("y^2+y*z+z^2")).unwrap();
        let v = val("x-3*z");
        let r = residue_report(&s, &v).unwrap();
        assert_eq!((r.v_a, r.v_b), (1, 0));
        assert_eq!(r.class.representative, poly("y^2+y*z+z^2"));
        assert!(!r.class.is_trivial());
    }

    #[test]
    fn unit_residues_are_trivial() {
        let s = SymbolClass::new(poly("x"), poly("y")).unwrap();
        assert!(residue(&s, &val("x+y+z")).unwrap().is_trivial());
    }

    #[test]
    fn f_minus_f_is_trivial() {
        let f = poly("x-2*y");
        let s = SymbolClass::new(f.clone(), -&f).unwrap();
        assert!(residue(&s, &val("x-2*y")).unwrap().is_trivial());
        let s = SymbolClass::new(f.clone(), f.clone()).unwrap();
        assert!(ramification_divisor(&s).unwrap().is_empty());
    }

    #[test]
    fn ramification_of_the_example() {
        let s = SymbolClass::new(poly("x^2+x*z+z^2"), poly("y^2+y*z+z^2")).unwrap();
        let ram = ramification_divisor(&s).unwrap();
        let mut centres: Vec<String> = ram.iter().map(|(v, _)| v.centre().to_string()).collect();
        centres.sort();
        assert_eq!(centres, ["x + 4*z", "x - 3*z", "y + 4*z", "y - 3*z"]);
        let one = SymbolClass::new(poly("1"), poly("y^2+y*z+z^2")).unwrap();
        assert!(ramification_divisor(&one).unwrap().is_empty());
    }

    #[test]
    fn conic_centre() {
        // x² + y² − z² is smooth; (x² + y² − z², y) ramifies along it
        let s = SymbolClass::new(poly("x^2+y^2-z^2"), poly("y*z")).unwrap();
        let v = val("x^2+y^2-z^2");
        assert!(!residue(&s, &v).unwrap().is_trivial());
        let s = SymbolClass::new(poly("x^2+y^2-z^2"), poly("y^2")).unwrap();
        assert!(residue(&s, &v).unwrap().is_trivial());
        assert!(matches!(
            DivisorialValuation::new(&poly("x*y")),
            Err(ResidueError::NotAbsolutelyIrreducible(_))
        ));
    }
}
