use std::fmt;

use crate::brauer_residue::{residue_report, DivisorialValuation, SymbolClass};
use crate::polyring::{
    cross, evaluate, is_square_mod_constants, linear_coefficients, normalize_point,
    restrict_to_line, FpPoly, PlanePoint, Var,
};

use super::{ArrangementConfig, ConfigError};

fn z_pow(cfg: &ArrangementConfig, e: u32) -> FpPoly {
    FpPoly::var(cfg.field, Var::Z).pow(e)
}

fn var(cfg: &ArrangementConfig, v: Var) -> FpPoly {
    FpPoly::var(cfg.field, v)
}

fn z_factor(e: u32) -> String {
    match e {
        0 => String::new(),
        1 => "*z".into(),
        _ => format!("*z^{e}"),
    }
}

/// The defining form of `X ⊂ ℙ² × ℙ(1,1,1,2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    /// `w² − (A z^{e₁} u⁴ + B z^{e₂} v⁴ + AB z^m (AB+F) t⁴)`.
    pub poly: FpPoly,
    /// The equation in terms of `A`, `B`, `F`.
    pub symbolic: String,
    pub e1: u32,
    pub e2: u32,
    pub bidegree: (u32, u32),
    /// Every monomial has bidegree [`Equation::bidegree`].
    pub bidegree_ok: bool,
}

pub fn build_equation(cfg: &ArrangementConfig) -> Equation {
    let e1 = 4 * cfg.g + cfg.m - cfg.n;
    let e2 = 2 * cfg.g + cfg.m + cfg.n;
    let (a, b) = (cfg.a(), cfg.b());
    let ab = &a * &b;
    let u4 = var(cfg, Var::U).pow(4);
    let v4 = var(cfg, Var::V).pow(4);
    let t4 = var(cfg, Var::T).pow(4);
    let rhs = &(&(&(&a * &z_pow(cfg, e1)) * &u4) + &(&(&b * &z_pow(cfg, e2)) * &v4))
        + &(&(&(&ab * &z_pow(cfg, cfg.m)) * &cfg.ab_plus_f()) * &t4);
    let poly = &var(cfg, Var::W).pow(2) - &rhs;

    let bidegree = cfg.bidegree();
    // w carries half the first degree so that w² balances the right side
    let first = [1, 1, 1, 0, 0, 0, bidegree.0 / 2];
    let second = [0, 0, 0, 1, 1, 1, 2];
    let bidegree_ok = poly.weighted_degree(first) == Some(bidegree.0)
        && poly.weighted_degree(second) == Some(bidegree.1);

    let symbolic = format!(
        "w^2 = A{}*u^4 + B{}*v^4 + A*B{}*(A*B+F)*t^4",
        z_factor(e1),
        z_factor(e2),
        z_factor(cfg.m)
    );
    Equation {
        poly,
        symbolic,
        e1,
        e2,
        bidegree,
        bidegree_ok,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

/// `∂_{v_l}(A, B)` for one line `l`, compared with the predicted class
/// (`B|_l` for a factor of `A`, `A|_l` for a factor of `B`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueCertificate {
    pub side: Side,
    pub line: FpPoly,
    pub v_a: i64,
    pub v_b: i64,
    /// Residue representative restricted to `l`.
    pub residue: FpPoly,
    pub expected: FpPoly,
    pub matches_expected: bool,
    pub nontrivial: bool,
}

impl ResidueCertificate {
    pub fn passed(&self) -> bool {
        self.matches_expected && self.nontrivial
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaCertificate {
    pub residues: Vec<ResidueCertificate>,
    /// `ABC` with `C = AB z^m (AB+F)` is a square (it must not be).
    pub abc_is_square: bool,
    /// `ABC / (AB+F) = (AB)² z^m` is a square.
    pub abc_class_is_ab_plus_f: bool,
}

impl AlphaCertificate {
    pub fn passed(&self) -> bool {
        !self.residues.is_empty()
            && self.residues.iter().all(ResidueCertificate::passed)
            && !self.abc_is_square
            && self.abc_class_is_ab_plus_f
    }
}

pub fn alpha_certificate(cfg: &ArrangementConfig) -> Result<AlphaCertificate, ConfigError> {
    cfg.validate()?;
    let (a, b) = (cfg.a(), cfg.b());
    let symbol = SymbolClass::new(a.clone(), b.clone())?;
    let sides = cfg
        .a_factors
        .iter()
        .map(|l| (Side::A, l, &b))
        .chain(cfg.b_factors.iter().map(|l| (Side::B, l, &a)));
    let mut residues = Vec::new();
    for (side, l, other) in sides {
        let v = DivisorialValuation::new(l)?;
        let report = residue_report(&symbol, &v)?;
        let expected = restrict_to_line(other, l)?.form;
        let product = &report.class.restricted * &expected;
        let matches_expected = !expected.is_zero() && is_square_mod_constants(&product);
        residues.push(ResidueCertificate {
            side,
            line: l.clone(),
            v_a: report.v_a,
            v_b: report.v_b,
            nontrivial: !report.class.is_trivial(),
            residue: report.class.restricted,
            expected,
            matches_expected,
        });
    }

    let ab = &a * &b;
    let zm = z_pow(cfg, cfg.m);
    let cofactor = &(&ab * &ab) * &zm;
    let abc = &cofactor * &cfg.ab_plus_f();
    Ok(AlphaCertificate {
        residues,
        abc_is_square: abc.is_zero() || is_square_mod_constants(&abc),
        abc_class_is_ab_plus_f: is_square_mod_constants(&cofactor),
    })
}

/// One local hypothesis, checked at one line or point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCheck {
    /// 1: generic point of a line; 2: point on only one of `{A = 0}`,
    /// `{B = 0}`; 3: `A`-line ∩ `B`-line; 4: points off `{AB = 0}`.
    pub case: u8,
    pub subject: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCertificates {
    pub checks: Vec<LocalCheck>,
}

impl LocalCertificates {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn case(&self, k: u8) -> impl Iterator<Item = &LocalCheck> {
        self.checks.iter().filter(move |c| c.case == k)
    }
}

fn point_string(p: &PlanePoint) -> String {
    format!("[{}:{}:{}]", p[0], p[1], p[2])
}

pub fn local_certificates(cfg: &ArrangementConfig) -> Result<LocalCertificates, ConfigError> {
    cfg.validate()?;
    let field = cfg.field;
    let (a, b) = (cfg.a(), cfg.b());
    let s = cfg.ab_plus_f();
    let big_f = cfg.big_f();
    let mut checks = Vec::new();

    for l in cfg.lines() {
        let s_l = restrict_to_line(&s, l)?.form;
        let f_l = restrict_to_line(&cfg.f, l)?.form;
        let square = &f_l * &f_l;
        let equal = s_l == restrict_to_line(&big_f, l)?.form && s_l == square;
        let passed = equal && !f_l.is_zero();
        let detail = if passed {
            format!("(AB+F)|l = (f|l)^2 with f|l = {f_l}")
        } else if f_l.is_zero() {
            "f vanishes on the line".into()
        } else {
            "(AB+F)|l differs from (f|l)^2".into()
        };
        checks.push(LocalCheck {
            case: 1,
            subject: l.to_string(),
            passed,
            detail,
        });
    }

    let coeffs = |fs: &[FpPoly]| -> Result<Vec<[u64; 3]>, ConfigError> {
        Ok(fs
            .iter()
            .map(linear_coefficients)
            .collect::<Result<_, _>>()?)
    };
    let ca = coeffs(&cfg.a_factors)?;
    let cb = coeffs(&cfg.b_factors)?;

    // points on two lines of one side; the other form must be a unit there
    for (own, other, other_name) in [(&ca, &b, "B"), (&cb, &a, "A")] {
        for i in 0..own.len() {
            for j in i + 1..own.len() {
                let Some(p) = normalize_point(field, cross(field, own[i], own[j])) else {
                    continue;
                };
                let value = evaluate(other, p)?;
                checks.push(LocalCheck {
                    case: 2,
                    subject: point_string(&p),
                    passed: value != 0,
                    detail: format!("{other_name}(P) = {}", field.signed(value)),
                });
            }
        }
    }

    for &la in &ca {
        for &lb in &cb {
            let Some(p) = normalize_point(field, cross(field, la, lb)) else {
                continue;
            };
            let sv = evaluate(&s, p)?;
            let fv = evaluate(&cfg.f, p)?;
            let passed = sv == field.mul(fv, fv) && fv != 0;
            checks.push(LocalCheck {
                case: 3,
                subject: point_string(&p),
                passed,
                detail: format!("(AB+F)(P) = f(P)^2 = {}^2", field.signed(fv)),
            });
        }
    }

    checks.push(LocalCheck {
        case: 4,
        subject: "points off AB = 0".into(),
        passed: true,
        detail: "vacuous: α is unramified there and no hypothesis is needed".into(),
    });
    Ok(LocalCertificates { checks })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DChoice {
    One,
    Z,
}

impl DChoice {
    pub fn degree(self) -> u32 {
        match self {
            DChoice::One => 0,
            DChoice::Z => 1,
        }
    }
}

impl fmt::Display for DChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DChoice::One => "1",
            DChoice::Z => "z",
        })
    }
}

/// The rewriting `w² = A′u⁴ + B′v⁴ + A′B′d²t⁴` near the generic point of a
/// line, where `AB + F` is a square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalForm {
    pub e1: u32,
    pub e2: u32,
    pub six_g_plus_m_mod4: u32,
    pub d: DChoice,
    /// `e₁ + e₂ = 6g + 2m` is even.
    pub parity_ok: bool,
    /// `6g + m + 2 deg d ≡ 0 mod 4`, so a rescaling `t ↦ z^k t` absorbs it.
    pub exponent_ok: bool,
    /// `AB z^m (AB+F) · z^{4k} = A′B′d² · (AB+F)` as polynomials.
    pub identity_ok: bool,
    pub note: String,
}

impl LocalForm {
    pub fn passed(&self) -> bool {
        self.parity_ok && self.exponent_ok && self.identity_ok
    }
}

pub fn normalize_local_form(cfg: &ArrangementConfig) -> LocalForm {
    let e1 = 4 * cfg.g + cfg.m - cfg.n;
    let e2 = 2 * cfg.g + cfg.m + cfg.n;
    let r = (6 * cfg.g + cfg.m) % 4;
    let d = if r == 0 { DChoice::One } else { DChoice::Z };
    let shift = 6 * cfg.g + cfg.m + 2 * d.degree();
    let exponent_ok = shift.is_multiple_of(4);

    let (a, b) = (cfg.a(), cfg.b());
    let s = cfg.ab_plus_f();
    let ab = &a * &b;
    let t4_coeff = &(&ab * &z_pow(cfg, cfg.m)) * &s;
    let a1 = &a * &z_pow(cfg, e1);
    let b1 = &b * &z_pow(cfg, e2);
    let d_poly = z_pow(cfg, d.degree());
    let lhs = &t4_coeff * &z_pow(cfg, shift);
    let rhs = &(&(&a1 * &b1) * &(&d_poly * &d_poly)) * &s;

    LocalForm {
        e1,
        e2,
        six_g_plus_m_mod4: r,
        d,
        parity_ok: (e1 + e2).is_multiple_of(2),
        exponent_ok,
        identity_ok: lhs == rhs,
        note: "the parity step reads \"6k+2m ≡ m mod 2\"; k is taken to be g, and the choice \
               of d follows the stated mod-4 rule, which is the condition that actually \
               matters since t is rescaled by powers of z inside t^4"
            .into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse, Domain};
    use crate::refvar::{builtin_example, family_member};

    #[test]
    fn example_equation() {
        let eq = build_equation(&builtin_example());
        assert_eq!(eq.symbolic, "w^2 = A*z^6*u^4 + B*z^6*v^4 + A*B*(A*B+F)*t^4");
        assert_eq!((eq.e1, eq.e2), (6, 6));
        assert_eq!(eq.bidegree, (8, 4));
        assert!(eq.bidegree_ok);
    }

    #[test]
    fn family_bidegree() {
        let cfg = family_member(5, &builtin_example()).unwrap();
        let eq = build_equation(&cfg);
        assert_eq!(eq.bidegree, (10, 4));
        assert!(eq.bidegree_ok);
        assert_eq!(
            eq.symbolic,
            "w^2 = A*z^8*u^4 + B*z^8*v^4 + A*B*z^2*(A*B+F)*t^4"
        );
    }

    #[test]
    fn example_alpha() {
        let c = alpha_certificate(&builtin_example()).unwrap();
        assert_eq!(c.residues.len(), 4);
        assert!(c.passed(), "{c:?}");
        for r in &c.residues {
            assert_eq!(r.v_a + r.v_b, 1);
        }
    }

    #[test]
    fn shared_line_kills_a_residue() {
        let mut cfg = builtin_example();
        cfg.b_factors = cfg.a_factors.clone();
        let c = alpha_certificate(&cfg).unwrap();
        assert!(!c.passed());
        assert!(c.residues.iter().any(|r| !r.nontrivial));
    }

    #[test]
    fn example_local() {
        let l = local_certificates(&builtin_example()).unwrap();
        assert!(l.passed());
        assert_eq!(l.case(3).count(), 4);
        assert_eq!(l.case(2).count(), 2);
    }

    #[test]
    fn vanishing_point_fails_case_three() {
        let dom = Domain::plane(13).unwrap();
        let mut cfg = builtin_example();
        // x - 3z and y - 3z meet at [3:3:1] = [1:1:9], where x - y vanishes
        cfg.f = parse("(x-y)*(x+y+z)", &dom).unwrap();
        let l = local_certificates(&cfg).unwrap();
        assert!(l.case(3).any(|c| !c.passed && c.subject == "[1:1:9]"));
    }

    #[test]
    fn d_choice() {
        let cfg = builtin_example();
        let f = normalize_local_form(&cfg);
        assert_eq!((f.e1, f.e2, f.d), (6, 6, DChoice::One));
        assert!(f.passed());
        let f = normalize_local_form(&family_member(5, &cfg).unwrap());
        assert_eq!(f.d, DChoice::Z);
        assert!(f.passed());
    }
}
