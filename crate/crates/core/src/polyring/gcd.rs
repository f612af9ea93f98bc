use std::collections::BTreeMap;

use super::poly::{FpPoly, Var};

/// Monic gcd of two multivariate polynomials.
///
/// Recursive primitive-part algorithm: pick the first variable present, split
/// off contents (gcds of coefficients, one variable fewer), and run a
/// primitive pseudo-remainder sequence on the primitive parts.
pub fn gcd(f: &FpPoly, g: &FpPoly) -> FpPoly {
    f.assert_same_field(g);
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    let var = Var::ALL
        .into_iter()
        .find(|&v| f.degree_in(v).unwrap_or(0) > 0 || g.degree_in(v).unwrap_or(0) > 0);
    let Some(v) = var else {
        return FpPoly::one(f.field());
    };
    let cf = content_in(f, v);
    let cg = content_in(g, v);
    let content = gcd(&cf, &cg);
    let mut a = f.div_exact(&cf).expect("content divides");
    let mut b = g.div_exact(&cg).expect("content divides");
    if deg(&a, v) < deg(&b, v) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        if deg(&b, v) == 0 {
            // primitive and free of v: a unit
            a = FpPoly::one(f.field());
            break;
        }
        let r = pseudo_remainder(&a, &b, v);
        a = b;
        b = primitive_part(&r, v);
    }
    (&content * &primitive_part(&a, v)).monic()
}

fn deg(f: &FpPoly, v: Var) -> u32 {
    f.degree_in(v).unwrap_or(0)
}

/// gcd of the coefficients of `f` viewed as a polynomial in `v`.
pub fn content_in(f: &FpPoly, v: Var) -> FpPoly {
    f.coefficients_in(v)
        .iter()
        .filter(|c| !c.is_zero())
        .fold(FpPoly::zero(f.field()), |acc, c| gcd(&acc, c))
}

pub fn primitive_part(f: &FpPoly, v: Var) -> FpPoly {
    if f.is_zero() {
        return f.clone();
    }
    f.div_exact(&content_in(f, v)).expect("content divides")
}

/// Pseudo-remainder of `a` by `b` in the variable `v`.
pub fn pseudo_remainder(a: &FpPoly, b: &FpPoly, v: Var) -> FpPoly {
    let db = deg(b, v);
    let lcb = b.coefficients_in(v).pop().expect("nonzero divisor");
    let mut r = a.clone();
    while !r.is_zero() && deg(&r, v) >= db {
        let dr = deg(&r, v);
        let lcr = r.coefficients_in(v).pop().unwrap();
        let mut shift = [0; super::poly::NVARS];
        shift[v.index()] = dr - db;
        r = &(&lcb * &r) - &(&lcr * &b.mul_monomial(&shift, 1));
    }
    r
}

/// `content · ∏ partᵢ^expᵢ` with monic, squarefree, pairwise coprime parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub content: u64,
    pub parts: Vec<(FpPoly, u32)>,
}

impl SquarefreeDecomposition {
    pub fn reassemble(&self, like: &FpPoly) -> FpPoly {
        self.parts.iter().fold(
            FpPoly::constant(like.field(), self.content),
            |acc, (g, e)| &acc * &g.pow(*e),
        )
    }

    /// Exponents of the positive-degree parts.
    pub fn exponents(&self) -> Vec<u32> {
        self.parts.iter().map(|(_, e)| *e).collect()
    }

    pub fn has_odd_part(&self) -> bool {
        self.parts.iter().any(|(_, e)| e % 2 == 1)
    }

    /// Product of the parts carrying an odd exponent.
    pub fn odd_kernel(&self, like: &FpPoly) -> FpPoly {
        self.parts
            .iter()
            .filter(|(_, e)| e % 2 == 1)
            .fold(FpPoly::one(like.field()), |acc, (g, _)| &acc * g)
    }
}

/// Squarefree decomposition over 𝔽_p, aware of the characteristic.
///
/// Runs the Musser loop once per variable with respect to that variable's
/// partial derivative. Whatever survives every pass has all partials zero and
/// is a p-th power; its p-th root is decomposed recursively.
pub fn squarefree_decomposition(f: &FpPoly) -> SquarefreeDecomposition {
    assert!(!f.is_zero(), "squarefree decomposition of zero");
    let mut acc: BTreeMap<u32, FpPoly> = BTreeMap::new();
    collect_parts(&f.monic(), 1, &mut acc);
    SquarefreeDecomposition {
        content: f.leading_coefficient(),
        parts: acc.into_iter().map(|(e, g)| (g.monic(), e)).collect(),
    }
}

fn collect_parts(f: &FpPoly, mult: u32, acc: &mut BTreeMap<u32, FpPoly>) {
    let field = f.field();
    let mut push = |g: FpPoly, e: u32| {
        let slot = acc.entry(e).or_insert_with(|| FpPoly::one(field));
        *slot = &*slot * &g;
    };
    let mut g = f.clone();
    for v in Var::ALL {
        if g.is_constant() {
            return;
        }
        let dg = g.derivative(v);
        if dg.is_zero() {
            continue;
        }
        let d = gcd(&g, &dg);
        let mut w = g.div_exact(&d).expect("gcd divides");
        let mut rest = d;
        let mut i = 1;
        while !w.is_constant() {
            let y = gcd(&w, &rest);
            let z = w.div_exact(&y).expect("gcd divides");
            if !z.is_constant() {
                push(z.monic(), i * mult);
            }
            rest = rest.div_exact(&y).expect("gcd divides");
            w = y;
            i += 1;
        }
        g = rest;
    }
    if !g.is_constant() {
        let root = g
            .pth_root()
            .expect("all partial derivatives vanish, so this is a p-th power");
        collect_parts(&root.monic(), mult * f.prime() as u32, acc);
    }
}

/// `true` iff `f` is a constant times a perfect square, i.e. a square over the
/// algebraic closure.
pub fn is_square_mod_constants(f: &FpPoly) -> bool {
    !squarefree_decomposition(f).has_odd_part()
}
