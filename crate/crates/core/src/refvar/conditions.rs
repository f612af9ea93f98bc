use std::fmt;

use crate::polyring::{
    cross, det3, evaluate, is_square_mod_constants, linear_coefficients, normalize_point,
    restrict_to_line, squarefree_decomposition, PlanePoint,
};

use super::{ArrangementConfig, ConfigError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// Lines pairwise distinct.
    I,
    /// No three lines concurrent.
    II,
    /// No line inside `{F = 0}`.
    III,
    /// `F` nonzero at every A-line ∩ B-line point.
    IV,
    /// `AB + F` not a square.
    V,
}

impl Condition {
    pub const ALL: [Condition; 5] = [
        Condition::I,
        Condition::II,
        Condition::III,
        Condition::IV,
        Condition::V,
    ];

    pub fn roman(self) -> &'static str {
        match self {
            Condition::I => "i",
            Condition::II => "ii",
            Condition::III => "iii",
            Condition::IV => "iv",
            Condition::V => "v",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Condition::I => "the lines are pairwise distinct",
            Condition::II => "no three lines are concurrent",
            Condition::III => "F vanishes on none of the lines",
            Condition::IV => "F is nonzero at every A-line/B-line intersection",
            Condition::V => "AB + F is not a square",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.roman())
    }
}

/// Evidence attached to a check. Line indices are 0-based positions in
/// [`ArrangementConfig::lines`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    ProportionalPair {
        i: usize,
        j: usize,
    },
    ConcurrentTriple {
        i: usize,
        j: usize,
        k: usize,
        point: Option<PlanePoint>,
    },
    LineInF {
        i: usize,
    },
    VanishingPoint {
        i: usize,
        j: usize,
        point: PlanePoint,
    },
    /// Squarefree parts of `AB + F` with odd exponent (nonconstant iff not a square).
    OddPart {
        odd_kernel: String,
        exponents: Vec<u32>,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pt = |p: &PlanePoint| format!("[{}:{}:{}]", p[0], p[1], p[2]);
        match self {
            Witness::ProportionalPair { i, j } => write!(f, "l{} = l{}", i + 1, j + 1),
            Witness::ConcurrentTriple { i, j, k, point } => {
                write!(f, "l{}, l{}, l{} concurrent", i + 1, j + 1, k + 1)?;
                match point {
                    Some(p) => write!(f, " at {}", pt(p)),
                    None => Ok(()),
                }
            }
            Witness::LineInF { i } => write!(f, "l{} divides f", i + 1),
            Witness::VanishingPoint { i, j, point } => {
                write!(f, "f(l{} ∩ l{}) = f{} = 0", i + 1, j + 1, pt(point))
            }
            Witness::OddPart {
                odd_kernel,
                exponents,
            } => {
                write!(f, "odd part {odd_kernel}, exponents {exponents:?}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionResult {
    pub condition: Condition,
    pub passed: bool,
    /// Failures for (i)–(iv); for (v) the parity certificate either way.
    pub witnesses: Vec<Witness>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionsReport {
    pub results: Vec<ConditionResult>,
}

impl ConditionsReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn get(&self, c: Condition) -> &ConditionResult {
        self.results
            .iter()
            .find(|r| r.condition == c)
            .expect("all conditions checked")
    }
}

fn result(condition: Condition, witnesses: Vec<Witness>, note: Option<String>) -> ConditionResult {
    ConditionResult {
        condition,
        passed: witnesses.is_empty(),
        witnesses,
        note,
    }
}

pub fn check_conditions(cfg: &ArrangementConfig) -> Result<ConditionsReport, ConfigError> {
    cfg.validate()?;
    let field = cfg.field;
    let lines: Vec<_> = cfg.lines().cloned().collect();
    let coeffs = lines
        .iter()
        .map(linear_coefficients)
        .collect::<Result<Vec<_>, _>>()?;
    let meet = |i: usize, j: usize| normalize_point(field, cross(field, coeffs[i], coeffs[j]));
    let k = lines.len();

    let mut pairs = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if meet(i, j).is_none() {
                pairs.push(Witness::ProportionalPair { i, j });
            }
        }
    }

    let mut triples = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                if det3(field, coeffs[i], coeffs[j], coeffs[l]) == 0 {
                    let point = meet(i, j).or_else(|| meet(i, l)).or_else(|| meet(j, l));
                    triples.push(Witness::ConcurrentTriple { i, j, k: l, point });
                }
            }
        }
    }
    let n = cfg.a_factors.len();
    let mixed = triples
        .iter()
        .filter(|w| match w {
            Witness::ConcurrentTriple { i, k, .. } => *i < n && *k >= n,
            _ => false,
        })
        .count();
    let triples_note = format!(
        "all {} triples checked; {} concurrent, {} of them mixing A and B lines",
        k * (k - 1) * (k - 2) / 6,
        triples.len(),
        mixed
    );

    let mut in_f = Vec::new();
    for (i, l) in lines.iter().enumerate() {
        if restrict_to_line(&cfg.f, l)?.is_zero() {
            in_f.push(Witness::LineInF { i });
        }
    }

    let mut vanishing = Vec::new();
    for i in 0..n {
        for j in n..k {
            if let Some(point) = meet(i, j) {
                if evaluate(&cfg.f, point)? == 0 {
                    vanishing.push(Witness::VanishingPoint { i, j, point });
                }
            }
        }
    }

    let s = cfg.ab_plus_f();
    let square = s.is_zero() || is_square_mod_constants(&s);
    let parity = if s.is_zero() {
        Witness::OddPart {
            odd_kernel: "0".into(),
            exponents: vec![],
        }
    } else {
        let d = squarefree_decomposition(&s);
        Witness::OddPart {
            odd_kernel: d.odd_kernel(&s).to_string(),
            exponents: d.exponents(),
        }
    };
    let cond_v = ConditionResult {
        condition: Condition::V,
        passed: !square,
        witnesses: vec![parity],
        note: None,
    };

    Ok(ConditionsReport {
        results: vec![
            result(Condition::I, pairs, None),
            result(Condition::II, triples, Some(triples_note)),
            result(
                Condition::III,
                in_f,
                Some("checked as l ∤ f, equivalent to l ∤ F = f²".into()),
            ),
            result(Condition::IV, vanishing, None),
            cond_v,
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse, Domain};
    use crate::refvar::builtin_example;

    #[test]
    fn example_passes() {
        let r = check_conditions(&builtin_example()).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn concurrent_lines_fail_ii() {
        let dom = Domain::plane(13).unwrap();
        let p = |s: &str| parse(s, &dom).unwrap();
        let mut cfg = builtin_example();
        cfg.a_factors = vec![p("x"), p("y")];
        cfg.b_factors = vec![p("x+y"), p("y-5*z")];
        let r = check_conditions(&cfg).unwrap();
        let ii = r.get(Condition::II);
        assert!(!ii.passed);
        assert!(ii.witnesses.contains(&Witness::ConcurrentTriple {
            i: 0,
            j: 1,
            k: 2,
            point: Some([0, 0, 1])
        }));
    }
}
