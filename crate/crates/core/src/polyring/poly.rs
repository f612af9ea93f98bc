use std::collections::BTreeMap;
use std::fmt;

use super::field::PrimeField;

pub const NVARS: usize = 7;

/// Exponent vector over the fixed alphabet `x, y, z, u, v, t, w`.
pub type Exponents = [u32; NVARS];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
    U,
    V,
    T,
    W,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X, Var::Y, Var::Z, Var::U, Var::V, Var::T, Var::W];
    /// Coordinates of the base plane.
    pub const PLANE: [Var; 3] = [Var::X, Var::Y, Var::Z];
    /// Fibre coordinates of the weighted projective space.
    pub const FIBRE: [Var; 4] = [Var::U, Var::V, Var::T, Var::W];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["x", "y", "z", "u", "v", "t", "w"][self.index()]
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sparse multivariate polynomial over 𝔽_p.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vector, so iteration is in
/// lexicographic order with `x > y > z > u > v > t > w`; the last entry is the
/// lex-leading term. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    field: PrimeField,
    terms: BTreeMap<Exponents, u64>,
}

impl FpPoly {
    pub fn zero(field: PrimeField) -> Self {
        Self {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, c: u64) -> Self {
        Self::monomial(field, [0; NVARS], c)
    }

    pub fn constant_i64(field: PrimeField, c: i64) -> Self {
        Self::constant(field, field.reduce_i64(c))
    }

    pub fn one(field: PrimeField) -> Self {
        Self::constant(field, 1)
    }

    pub fn var(field: PrimeField, v: Var) -> Self {
        let mut e = [0; NVARS];
        e[v.index()] = 1;
        Self::monomial(field, e, 1)
    }

    pub fn monomial(field: PrimeField, exps: Exponents, c: u64) -> Self {
        let mut terms = BTreeMap::new();
        let c = c % field.modulus();
        if c != 0 {
            terms.insert(exps, c);
        }
        Self { field, terms }
    }

    /// Linear form `a·x + b·y + c·z` with signed integer coefficients.
    pub fn linear(field: PrimeField, coeffs: [i64; 3]) -> Self {
        let mut out = Self::zero(field);
        for (v, c) in Var::PLANE.into_iter().zip(coeffs) {
            out = &out + &Self::var(field, v).scale(field.reduce_i64(c));
        }
        out
    }

    pub fn from_terms(
        field: PrimeField,
        terms: impl IntoIterator<Item = (Exponents, u64)>,
    ) -> Self {
        let mut out = Self::zero(field);
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn prime(&self) -> u64 {
        self.field.modulus()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &u64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> u64 {
        self.terms.get(&[0; NVARS]).copied().unwrap_or(0)
    }

    pub fn coefficient(&self, e: &Exponents) -> u64 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, e: Exponents, c: u64) {
        let f = self.field;
        let c = c % f.modulus();
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e).or_insert(0);
        *entry = f.add(*entry, c);
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn leading(&self) -> Option<(&Exponents, u64)> {
        self.terms.iter().next_back().map(|(e, &c)| (e, c))
    }

    pub fn leading_coefficient(&self) -> u64 {
        self.leading().map_or(0, |(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|e| e[v.index()]).max()
    }

    pub fn variables(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|v| self.terms.keys().any(|e| e[v.index()] > 0))
            .collect()
    }

    /// Degree if every term has the same weighted degree.
    pub fn weighted_degree(&self, weights: [u32; NVARS]) -> Option<u32> {
        let mut degs = self
            .terms
            .keys()
            .map(|e| e.iter().zip(weights).map(|(a, w)| a * w).sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.weighted_degree([1; NVARS]).is_some()
    }

    /// Degree in `x, y, z` if the polynomial is homogeneous in those variables.
    pub fn plane_degree(&self) -> Option<u32> {
        self.weighted_degree([1, 1, 1, 0, 0, 0, 0])
    }

    pub fn scale(&self, c: u64) -> Self {
        let f = self.field;
        let c = c % f.modulus();
        if c == 0 {
            return Self::zero(f);
        }
        Self {
            field: f,
            terms: self.terms.iter().map(|(e, &a)| (*e, f.mul(a, c))).collect(),
        }
    }

    /// Scaled so the lex-leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(self.field.inv(c)),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn mul_monomial(&self, e: &Exponents, c: u64) -> Self {
        let f = self.field;
        let mut out = Self::zero(f);
        for (m, &a) in &self.terms {
            out.add_term(add_exps(m, e), f.mul(a, c));
        }
        out
    }

    pub fn derivative(&self, v: Var) -> Self {
        let f = self.field;
        let i = v.index();
        let mut out = Self::zero(f);
        for (e, &c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = *e;
            ne[i] -= 1;
            out.add_term(ne, f.mul(c, e[i] as u64 % f.modulus()));
        }
        out
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &FpPoly) -> Option<FpPoly> {
        let f = self.field;
        let (dlead, dc) = d.leading().map(|(e, c)| (*e, c))?;
        let dinv = f.inv(dc);
        let mut rest = self.clone();
        let mut quot = Self::zero(f);
        while let Some((lead, c)) = rest.leading().map(|(e, c)| (*e, c)) {
            let qe = sub_exps(&lead, &dlead)?;
            let qc = f.mul(c, dinv);
            rest = &rest - &d.mul_monomial(&qe, qc);
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    pub fn divides(&self, other: &FpPoly) -> bool {
        other.div_exact(self).is_some()
    }

    /// Coefficients of `self` as a polynomial in `v`, index = power of `v`.
    pub fn coefficients_in(&self, v: Var) -> Vec<FpPoly> {
        let i = v.index();
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(self.field); deg + 1];
        for (e, &c) in &self.terms {
            let mut ne = *e;
            ne[i] = 0;
            out[e[i] as usize].add_term(ne, c);
        }
        out
    }

    pub fn from_coefficients_in(field: PrimeField, v: Var, coeffs: &[FpPoly]) -> Self {
        let mut out = Self::zero(field);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, &a) in &c.terms {
                let mut ne = *e;
                ne[v.index()] += k as u32;
                out.add_term(ne, a);
            }
        }
        out
    }

    /// Substitutes a polynomial for every variable that has `Some` entry.
    pub fn substitute(&self, subs: &[Option<FpPoly>; NVARS]) -> Self {
        let f = self.field;
        let mut out = Self::zero(f);
        let mut cache: Vec<Vec<FpPoly>> = vec![Vec::new(); NVARS];
        for (e, &c) in &self.terms {
            let mut term = Self::constant(f, c);
            let mut keep = [0u32; NVARS];
            for i in 0..NVARS {
                match &subs[i] {
                    Some(s) if e[i] > 0 => {
                        let powers = &mut cache[i];
                        if powers.is_empty() {
                            powers.push(Self::one(f));
                        }
                        while powers.len() <= e[i] as usize {
                            let next = powers.last().unwrap() * s;
                            powers.push(next);
                        }
                        term = &term * &powers[e[i] as usize];
                    }
                    Some(_) => {}
                    None => keep[i] = e[i],
                }
            }
            out = &out + &term.mul_monomial(&keep, 1);
        }
        out
    }

    /// Evaluates with the given values for `x, y, z` (other variables must be absent
    /// or are treated as zero).
    pub fn evaluate_plane(&self, point: [u64; 3]) -> u64 {
        let mut vals = [0u64; NVARS];
        vals[..3].copy_from_slice(&point);
        self.evaluate(&vals)
    }

    pub fn evaluate(&self, vals: &[u64; NVARS]) -> u64 {
        let f = self.field;
        self.terms.iter().fold(0, |acc, (e, &c)| {
            let t = e
                .iter()
                .zip(vals)
                .fold(c, |t, (&k, &x)| f.mul(t, f.pow(x, k as u64)));
            f.add(acc, t)
        })
    }

    /// `h` with `h^p = self` when every exponent is divisible by `p`.
    pub fn pth_root(&self) -> Option<Self> {
        let p = self.prime() as u32;
        let mut out = Self::zero(self.field);
        for (e, &c) in &self.terms {
            if e.iter().any(|&k| k % p != 0) {
                return None;
            }
            let mut ne = *e;
            ne.iter_mut().for_each(|k| *k /= p);
            // Frobenius fixes 𝔽_p pointwise
            out.add_term(ne, c);
        }
        Some(out)
    }

    pub(crate) fn assert_same_field(&self, other: &FpPoly) {
        assert_eq!(self.field, other.field, "polynomials over different fields");
    }
}

pub(crate) fn add_exps(a: &Exponents, b: &Exponents) -> Exponents {
    let mut out = *a;
    out.iter_mut().zip(b).for_each(|(x, y)| *x += y);
    out
}

pub(crate) fn sub_exps(a: &Exponents, b: &Exponents) -> Option<Exponents> {
    let mut out = *a;
    for (x, y) in out.iter_mut().zip(b) {
        *x = x.checked_sub(*y)?;
    }
    Some(out)
}

impl std::ops::Add for &FpPoly {
    type Output = FpPoly;
    fn add(self, rhs: &FpPoly) -> FpPoly {
        self.assert_same_field(rhs);
        let mut out = self.clone();
        for (e, &c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl std::ops::Sub for &FpPoly {
    type Output = FpPoly;
    fn sub(self, rhs: &FpPoly) -> FpPoly {
        self.assert_same_field(rhs);
        let f = self.field;
        let mut out = self.clone();
        for (e, &c) in &rhs.terms {
            out.add_term(*e, f.neg(c));
        }
        out
    }
}

impl std::ops::Neg for &FpPoly {
    type Output = FpPoly;
    fn neg(self) -> FpPoly {
        self.scale(self.field.modulus() - 1)
    }
}

impl std::ops::Mul for &FpPoly {
    type Output = FpPoly;
    fn mul(self, rhs: &FpPoly) -> FpPoly {
        self.assert_same_field(rhs);
        let f = self.field;
        let mut out = FpPoly::zero(f);
        for (ea, &a) in &self.terms {
            for (eb, &b) in &rhs.terms {
                out.add_term(add_exps(ea, eb), f.mul(a, b));
            }
        }
        out
    }
}

/// Canonical text form: terms in descending lex order, coefficients printed as
/// symmetric residues, accepted back by the parser.
impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let field = self.field;
        for (k, (e, &c)) in self.terms.iter().rev().enumerate() {
            let s = field.signed(c);
            let mag = s.unsigned_abs();
            if k == 0 {
                if s < 0 {
                    f.write_str("-")?;
                }
            } else if s < 0 {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            let is_const = e.iter().all(|&x| x == 0);
            if mag != 1 || is_const {
                factors.push(mag.to_string());
            }
            for v in Var::ALL {
                match e[v.index()] {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    n => factors.push(format!("{}^{}", v.name(), n)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPoly[F_{}]({})", self.prime(), self)
    }
}
