//! The arrangement config file, a TOML document with one `[arrangement]`
//! table:
//!
//! ```toml
//! [arrangement]
//! prime = 13
//! g = 2
//! n = 2
//! m = 0
//! a = "x^2 + x*z + z^2"          # or a_factors = ["x + 4*z", "x - 3*z"]
//! b_factors = ["y + 4*z", "y - 3*z"]
//! f = "(x + y)^2"
//! ```
//!
//! `a`/`b` are split into linear factors over 𝔽_p (degree ≤ 2 only).
//! `q`, if present, replaces `m` by `2q − 8`.

use serde::Deserialize;

use crate::polyring::{parse, Domain, FpPoly};

use super::{family_member, split_factors, ArrangementConfig, ConfigError};

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub arrangement: RawArrangement,
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RawArrangement {
    pub prime: u64,
    pub g: u32,
    pub n: u32,
    #[serde(default)]
    pub m: u32,
    pub q: Option<u32>,
    pub a: Option<String>,
    pub a_factors: Option<Vec<String>>,
    pub b: Option<String>,
    pub b_factors: Option<Vec<String>>,
    pub f: String,
}

/// The bundled example arrangement over 𝔽₁₃.
pub const EXAMPLE_CONFIG: &str = include_str!("../../data/example.toml");

fn line_of_offset(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

/// 1-based line of the first `key = …` assignment, or 1.
fn line_of_key(text: &str, key: &str) -> usize {
    text.lines()
        .position(|l| {
            let t = l.trim_start();
            t.strip_prefix(key)
                .is_some_and(|rest| rest.trim_start().starts_with('='))
        })
        .map_or(1, |i| i + 1)
}

pub fn parse_config(text: &str) -> Result<ArrangementConfig, ConfigError> {
    parse_config_with_prime(text, None)
}

/// As [`parse_config`], reading every polynomial over `prime` when given.
pub fn parse_config_with_prime(
    text: &str,
    prime: Option<u64>,
) -> Result<ArrangementConfig, ConfigError> {
    let file: ConfigFile = toml::from_str(text).map_err(|e| ConfigError::Parse {
        line: e.span().map_or(1, |s| line_of_offset(text, s.start)),
        message: e.message().to_string(),
    })?;
    let mut raw = file.arrangement;
    if let Some(p) = prime {
        raw.prime = p;
    }
    let at = |key: &str, message: String| ConfigError::Parse {
        line: line_of_key(text, key),
        message,
    };
    let dom = Domain::plane(raw.prime).map_err(|e| at("prime", e.to_string()))?;
    let poly = |key: &str, s: &str| -> Result<FpPoly, ConfigError> {
        parse(s, &dom).map_err(|e| at(key, format!("{key}: {e}")))
    };
    let side = |name: &str, product: &Option<String>, factors: &Option<Vec<String>>| {
        let key = format!("{name}_factors");
        match (product, factors) {
            (Some(_), Some(_)) => Err(at(name, format!("give either {name} or {key}, not both"))),
            (None, None) => Err(at("[arrangement]", format!("missing {name} or {key}"))),
            (Some(p), None) => {
                let q = poly(name, p)?;
                split_factors(&q).map_err(|e| at(name, format!("{name}: {e}")))
            }
            (None, Some(fs)) => fs.iter().map(|s| poly(&key, s)).collect(),
        }
    };
    let a_factors = side("a", &raw.a, &raw.a_factors)?;
    let b_factors = side("b", &raw.b, &raw.b_factors)?;
    let f = poly("f", &raw.f)?;
    let cfg = ArrangementConfig::new(dom.field, raw.g, raw.n, raw.m, a_factors, b_factors, f)?;
    match raw.q {
        Some(q) => family_member(q, &cfg),
        None => Ok(cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refvar::builtin_example;

    const EXAMPLE: &str = EXAMPLE_CONFIG;

    #[test]
    fn bundled_example_is_builtin() {
        assert_eq!(parse_config(EXAMPLE).unwrap(), builtin_example());
    }

    #[test]
    fn explicit_factors() {
        let text = "[arrangement]\nprime = 13\ng = 2\nn = 2\n\
                    a_factors = [\"x+4*z\", \"x-3*z\"]\nb = \"y^2+y*z+z^2\"\nf = \"(x+y)^2\"\n";
        assert_eq!(parse_config(text).unwrap(), builtin_example());
    }

    #[test]
    fn errors_carry_lines() {
        let text = "[arrangement]\nprime = 13\ng = 2\nn = 2\na = \"x^2+x*z+z^2\"\nb = \"y^2+y*z+z^2\"\nf = \"(x+y\"\n";
        assert!(matches!(
            parse_config(text),
            Err(ConfigError::Parse { line: 7, .. })
        ));
        let text = "[arrangement]\nprime = 13\ng = two\n";
        assert!(matches!(
            parse_config(text),
            Err(ConfigError::Parse { line: 3, .. })
        ));
        // x² + 1 has no root mod 7
        let text = "[arrangement]\nprime = 7\ng = 2\nn = 2\na = \"x^2+z^2\"\nb = \"y^2+y*z+z^2\"\nf = \"(x+y)^2\"\n";
        assert!(matches!(
            parse_config(text),
            Err(ConfigError::Parse { line: 5, .. })
        ));
    }

    #[test]
    fn family_override() {
        let text = EXAMPLE.replace("m = 0", "m = 0\nq = 5");
        assert_eq!(parse_config(&text).unwrap().m, 2);
    }

    #[test]
    fn prime_override() {
        // x² + x + 1 splits mod 7 as well (roots 2 and 4)
        let cfg = parse_config_with_prime(EXAMPLE, Some(7)).unwrap();
        assert_eq!(cfg.field.modulus(), 7);
        assert!(parse_config_with_prime(EXAMPLE, Some(5)).is_err());
    }
}
