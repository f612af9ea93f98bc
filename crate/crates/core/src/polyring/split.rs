use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::cyclo::CycloElem;

/// Exponents of the three root symbols (negative powers allowed).
pub type RootExponents = [i32; 3];

/// Laurent polynomial in three algebraically independent root symbols with
/// coefficients in ℚ(ζ₈).
///
/// The symbols stand for fourth roots `a, b, c` (or `a, b, √d`); which names
/// they carry is decided by the caller. Equality is structural and canonical
/// because zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SplitScalar {
    terms: BTreeMap<RootExponents, CycloElem>,
}

impl SplitScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(c: CycloElem, e: RootExponents) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    pub fn constant(c: CycloElem) -> Self {
        Self::term(c, [0; 3])
    }

    pub fn one() -> Self {
        Self::constant(CycloElem::one())
    }

    /// The bare root symbol with index `k`.
    pub fn symbol(k: usize) -> Self {
        let mut e = [0; 3];
        e[k] = 1;
        Self::term(CycloElem::one(), e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RootExponents, &CycloElem)> {
        self.terms.iter()
    }

    /// Single nonzero term: invertible in the Laurent ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(Self::term(c.inverse()?, e.map(|x| -x)))
    }

    pub fn scale(&self, c: &CycloElem) -> Self {
        let mut out = Self::zero();
        for (e, a) in &self.terms {
            out.add_term(*e, a * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Field automorphism fixing ℚ(ζ₈) and sending symbol `k` to `ζ^shift`
    /// times itself.
    pub fn twist(&self, k: usize, shift: i64) -> Self {
        let mut out = Self::zero();
        for (e, a) in &self.terms {
            out.add_term(*e, &CycloElem::zeta_pow(shift * e[k] as i64) * a);
        }
        out
    }

    /// Substitutes `value` for symbol `k`; the exponent of `k` must be ≥ 0.
    pub fn substitute(&self, k: usize, value: &SplitScalar) -> Self {
        let mut out = Self::zero();
        for (e, a) in &self.terms {
            assert!(e[k] >= 0, "substitution into a negative power");
            let mut rest = *e;
            rest[k] = 0;
            let t = &Self::term(a.clone(), rest) * &value.pow(e[k] as u32);
            out = &out + &t;
        }
        out
    }

    fn add_term(&mut self, e: RootExponents, c: CycloElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(slot) => {
                let s = &*slot + &c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *slot = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn display_with(&self, names: [&str; 3]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .zip(names)
                    .filter(|(k, _)| **k != 0)
                    .map(|(k, n)| {
                        if *k == 1 {
                            n.to_string()
                        } else {
                            format!("{n}^{k}")
                        }
                    })
                    .collect();
                let coeff = c.to_string();
                match (mono.is_empty(), coeff.as_str()) {
                    (true, _) => format!("({coeff})"),
                    (false, "1") => mono.join("*"),
                    (false, _) => format!("({coeff})*{}", mono.join("*")),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl Add for &SplitScalar {
    type Output = SplitScalar;
    fn add(self, rhs: &SplitScalar) -> SplitScalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &SplitScalar {
    type Output = SplitScalar;
    fn sub(self, rhs: &SplitScalar) -> SplitScalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Neg for &SplitScalar {
    type Output = SplitScalar;
    fn neg(self) -> SplitScalar {
        SplitScalar {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &SplitScalar {
    type Output = SplitScalar;
    fn mul(self, rhs: &SplitScalar) -> SplitScalar {
        let mut out = SplitScalar::zero();
        for (ea, a) in &self.terms {
            for (eb, b) in &rhs.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], a * b);
            }
        }
        out
    }
}

impl fmt::Debug for SplitScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(["r0", "r1", "r2"]))
    }
}
