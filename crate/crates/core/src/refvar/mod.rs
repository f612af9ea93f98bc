//! Line arrangements `A = l₁⋯lₙ`, `B = lₙ₊₁⋯l₂g` with `F = f²` in ℙ², the
//! double cover family
//!
//! ```text
//! w² = A z^{4g+m−n} u⁴ + B z^{2g+m+n} v⁴ + AB z^m (AB+F) t⁴
//! ```
//!
//! over ℙ², and certificates for the hypotheses that make the quaternion
//! symbol `(A, B)` a nonzero unramified class on it.

mod certificates;
mod conditions;
mod config_file;

use thiserror::Error;

use crate::brauer_residue::ResidueError;
use crate::polyring::{
    linear_coefficients, parse, split_quadratic, Domain, FpPoly, PolyError, PrimeField, Var,
};

pub use certificates::{
    alpha_certificate, build_equation, local_certificates, normalize_local_form, AlphaCertificate,
    DChoice, Equation, LocalCertificates, LocalCheck, LocalForm, ResidueCertificate, Side,
};
pub use conditions::{check_conditions, Condition, ConditionResult, ConditionsReport, Witness};
pub use config_file::{
    parse_config, parse_config_with_prime, ConfigFile, RawArrangement, EXAMPLE_CONFIG,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("invalid arrangement: {0}")]
    Invalid(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Residue(#[from] ResidueError),
}

/// Input data of the construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrangementConfig {
    pub field: PrimeField,
    pub g: u32,
    pub n: u32,
    pub m: u32,
    /// Set when the config came from [`family_member`].
    pub q: Option<u32>,
    pub a_factors: Vec<FpPoly>,
    pub b_factors: Vec<FpPoly>,
    /// `F = f²`.
    pub f: FpPoly,
}

fn product(field: PrimeField, fs: &[FpPoly]) -> FpPoly {
    fs.iter().fold(FpPoly::one(field), |acc, l| &acc * l)
}

impl ArrangementConfig {
    /// Builds and validates a configuration.
    pub fn new(
        field: PrimeField,
        g: u32,
        n: u32,
        m: u32,
        a_factors: Vec<FpPoly>,
        b_factors: Vec<FpPoly>,
        f: FpPoly,
    ) -> Result<Self, ConfigError> {
        let cfg = Self {
            field,
            g,
            n,
            m,
            q: None,
            a_factors,
            b_factors,
            f,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |s: String| Err(ConfigError::Invalid(s));
        if self.g == 0 {
            return bad("g must be at least 1".into());
        }
        if self.n == 0 {
            return bad("n = 0 leaves A constant; at least one line in A is required".into());
        }
        if !self.n.is_multiple_of(2) || self.n >= 2 * self.g {
            return bad(format!(
                "n must be even with 2 <= n < 2g = {}, got {}",
                2 * self.g,
                self.n
            ));
        }
        if !self.m.is_multiple_of(2) {
            return bad(format!("m must be even, got {}", self.m));
        }
        if self.a_factors.len() != self.n as usize {
            return bad(format!(
                "A needs n = {} linear factors, got {}",
                self.n,
                self.a_factors.len()
            ));
        }
        let nb = (2 * self.g - self.n) as usize;
        if self.b_factors.len() != nb {
            return bad(format!(
                "B needs 2g - n = {nb} linear factors, got {}",
                self.b_factors.len()
            ));
        }
        for l in self.lines() {
            if l.prime() != self.field.modulus() {
                return bad(format!("'{l}' is over a different prime"));
            }
            linear_coefficients(l)?;
        }
        if self.f.prime() != self.field.modulus() {
            return bad("f is over a different prime".into());
        }
        let planar = self.f.variables().iter().all(|v| Var::PLANE.contains(v));
        if self.f.is_zero() || !planar || self.f.plane_degree() != Some(self.g) {
            return bad(format!(
                "f must be a nonzero form of degree g = {} in x, y, z, got '{}'",
                self.g, self.f
            ));
        }
        Ok(())
    }

    /// `l₁, …, l₂g`: the factors of `A` followed by those of `B`.
    pub fn lines(&self) -> impl Iterator<Item = &FpPoly> {
        self.a_factors.iter().chain(&self.b_factors)
    }

    pub fn a(&self) -> FpPoly {
        product(self.field, &self.a_factors)
    }

    pub fn b(&self) -> FpPoly {
        product(self.field, &self.b_factors)
    }

    pub fn big_f(&self) -> FpPoly {
        &self.f * &self.f
    }

    pub fn ab_plus_f(&self) -> FpPoly {
        &(&self.a() * &self.b()) + &self.big_f()
    }

    /// Bidegree `(4g + m, 4)` of the hypersurface.
    pub fn bidegree(&self) -> (u32, u32) {
        (4 * self.g + self.m, 4)
    }
}

/// Linear factors of a form of degree ≤ 2, split over 𝔽_p.
pub fn split_factors(q: &FpPoly) -> Result<Vec<FpPoly>, ConfigError> {
    Ok(split_quadratic(q)?.factors)
}

/// The arrangement `A = x² + xz + z²`, `B = y² + yz + z²`, `f = (x + y)²` over
/// 𝔽₁₃ with `g = n = 2`, `m = 0`.
pub fn builtin_example() -> ArrangementConfig {
    let dom = Domain::plane(13).expect("13 is an odd prime");
    let p = |s: &str| parse(s, &dom).expect("valid literal");
    let a = split_factors(&p("x^2+x*z+z^2")).expect("x^2+x+1 splits mod 13");
    let b = split_factors(&p("y^2+y*z+z^2")).expect("y^2+y+1 splits mod 13");
    ArrangementConfig::new(dom.field, 2, 2, 0, a, b, p("(x+y)^2")).expect("valid example")
}

/// The seed arrangement with `m = 2q − 8`, giving bidegree `(2q, 4)`.
pub fn family_member(q: u32, seed: &ArrangementConfig) -> Result<ArrangementConfig, ConfigError> {
    if q < 4 {
        return Err(ConfigError::Invalid(format!(
            "q must be at least 4 (m = 2q - 8 >= 0), got {q}"
        )));
    }
    if seed.g != 2 || seed.n != 2 {
        return Err(ConfigError::Invalid(
            "the family needs a seed with g = 2 and n = 2".into(),
        ));
    }
    let mut cfg = seed.clone();
    cfg.m = 2 * q - 8;
    cfg.q = Some(q);
    cfg.validate()?;
    Ok(cfg)
}

/// Every check in one place.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub conditions: ConditionsReport,
    pub equation: Equation,
    pub alpha: AlphaCertificate,
    pub local: LocalCertificates,
    pub normalization: LocalForm,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.conditions.passed()
            && self.equation.bidegree_ok
            && self.alpha.passed()
            && self.local.passed()
            && self.normalization.passed()
    }
}

pub fn verify(cfg: &ArrangementConfig) -> Result<VerificationReport, ConfigError> {
    cfg.validate()?;
    Ok(VerificationReport {
        conditions: check_conditions(cfg)?,
        equation: build_equation(cfg),
        alpha: alpha_certificate(cfg)?,
        local: local_certificates(cfg)?,
        normalization: normalize_local_form(cfg),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_splits_as_expected() {
        let cfg = builtin_example();
        assert_eq!((cfg.g, cfg.n, cfg.m), (2, 2, 0));
        let names: Vec<String> = cfg.a_factors.iter().map(|l| l.to_string()).collect();
        assert_eq!(names, ["x + 4*z", "x - 3*z"]);
        // 3 and 9 are the roots of x² + x + 1 mod 13
        for r in [3u64, 9] {
            assert_eq!((r * r + r + 1) % 13, 0);
        }
    }

    #[test]
    fn n_zero_rejected() {
        let cfg = builtin_example();
        let mut bad = cfg.clone();
        bad.n = 0;
        bad.b_factors.append(&mut bad.a_factors);
        assert!(matches!(bad.validate(), Err(ConfigError::Invalid(m)) if m.contains("n = 0")));
    }

    #[test]
    fn family_parameters() {
        let seed = builtin_example();
        assert_eq!(family_member(4, &seed).unwrap().bidegree(), (8, 4));
        assert_eq!(family_member(5, &seed).unwrap().m, 2);
        assert_eq!(family_member(5, &seed).unwrap().bidegree(), (10, 4));
        assert!(family_member(3, &seed).is_err());
    }

    #[test]
    fn full_pipeline() {
        let cfg = builtin_example();
        assert!(verify(&cfg).unwrap().passed());
        assert!(verify(&family_member(5, &cfg).unwrap()).unwrap().passed());
    }

    #[test]
    fn f_sharing_a_line_fails_iii() {
        let mut cfg = builtin_example();
        cfg.f = &cfg.a_factors[0] * &FpPoly::var(cfg.field, Var::Y);
        let r = verify(&cfg).unwrap();
        assert!(!r.conditions.get(Condition::III).passed);
        assert!(!r.local.passed());
        assert!(!r.passed());
    }
}
