use super::field::PrimeField;
use super::poly::{FpPoly, Var, NVARS};
use super::PolyError;

/// A point of ℙ²(𝔽_p), normalized so its first nonzero coordinate is 1.
pub type PlanePoint = [u64; 3];

/// Coefficients `(a, b, c)` of a linear form `a·x + b·y + c·z`.
pub fn linear_coefficients(l: &FpPoly) -> Result<[u64; 3], PolyError> {
    if l.is_zero() || l.plane_degree() != Some(1) || l.total_degree() != Some(1) {
        return Err(PolyError::NotLinear(l.to_string()));
    }
    let mut out = [0; 3];
    for (i, v) in Var::PLANE.into_iter().enumerate() {
        let mut e = [0; NVARS];
        e[v.index()] = 1;
        out[i] = l.coefficient(&e);
    }
    Ok(out)
}

pub fn normalize_point(field: PrimeField, p: [u64; 3]) -> Option<PlanePoint> {
    let lead = *p.iter().find(|&&c| c != 0)?;
    let inv = field.inv(lead);
    Some(p.map(|c| field.mul(c, inv)))
}

pub fn cross(field: PrimeField, a: [u64; 3], b: [u64; 3]) -> [u64; 3] {
    let m = |x: u64, y: u64| field.mul(x, y);
    [
        field.sub(m(a[1], b[2]), m(a[2], b[1])),
        field.sub(m(a[2], b[0]), m(a[0], b[2])),
        field.sub(m(a[0], b[1]), m(a[1], b[0])),
    ]
}

pub fn det3(field: PrimeField, a: [u64; 3], b: [u64; 3], c: [u64; 3]) -> u64 {
    let bc = cross(field, b, c);
    (0..3).fold(0, |acc, i| field.add(acc, field.mul(a[i], bc[i])))
}

/// Intersection point of two lines, `None` if they coincide.
pub fn intersection_point(l1: &FpPoly, l2: &FpPoly) -> Result<Option<PlanePoint>, PolyError> {
    let f = l1.field();
    let p = cross(f, linear_coefficients(l1)?, linear_coefficients(l2)?);
    Ok(normalize_point(f, p))
}

pub fn proportional(l1: &FpPoly, l2: &FpPoly) -> Result<bool, PolyError> {
    Ok(intersection_point(l1, l2)?.is_none())
}

/// Evaluates a form in `x, y, z` at a projective point.
pub fn evaluate(f: &FpPoly, point: [u64; 3]) -> Result<u64, PolyError> {
    if point.iter().all(|&c| c % f.prime() == 0) {
        return Err(PolyError::ZeroPoint);
    }
    Ok(f.evaluate_plane(point.map(|c| c % f.prime())))
}

/// Two points spanning the line `{l = 0}`.
pub fn line_points(l: &FpPoly) -> Result<[PlanePoint; 2], PolyError> {
    let f = l.field();
    let [a, b, c] = linear_coefficients(l)?;
    let n = |x: u64| f.neg(x);
    let pts = if c != 0 {
        [[c, 0, n(a)], [0, c, n(b)]]
    } else if b != 0 {
        [[b, n(a), 0], [0, 0, 1]]
    } else {
        [[0, 1, 0], [0, 0, 1]]
    };
    Ok(pts.map(|p| normalize_point(f, p).unwrap()))
}

/// A form restricted to a line, as a binary form in the line parameters.
///
/// The parameters are written with the variables `x` (for `s`) and `y` (for
/// `r`), where the point `s·P₁ + r·P₂` runs over the line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineRestriction {
    pub form: FpPoly,
    pub degree: u32,
}

impl LineRestriction {
    pub fn is_zero(&self) -> bool {
        self.form.is_zero()
    }

    /// Dehomogenized at `r = 1`, as a polynomial in `x`.
    pub fn univariate(&self) -> FpPoly {
        let mut subs: [Option<FpPoly>; NVARS] = Default::default();
        subs[Var::Y.index()] = Some(FpPoly::one(self.form.field()));
        self.form.substitute(&subs)
    }

    /// Number of roots at `r = 0` (the parameter point `P₁`).
    pub fn degree_at_infinity(&self) -> u32 {
        match self.univariate().degree_in(Var::X) {
            Some(d) if !self.is_zero() => self.degree - d,
            _ => 0,
        }
    }
}

pub fn restrict_to_line(f: &FpPoly, l: &FpPoly) -> Result<LineRestriction, PolyError> {
    let degree = homogeneous_plane_degree(f)?;
    let [p1, p2] = line_points(l)?;
    let field = f.field();
    let s = FpPoly::var(field, Var::X);
    let r = FpPoly::var(field, Var::Y);
    let mut subs: [Option<FpPoly>; NVARS] = Default::default();
    for (i, v) in Var::PLANE.into_iter().enumerate() {
        subs[v.index()] = Some(&s.scale(p1[i]) + &r.scale(p2[i]));
    }
    Ok(LineRestriction {
        form: f.substitute(&subs),
        degree,
    })
}

pub(crate) fn homogeneous_plane_degree(f: &FpPoly) -> Result<u32, PolyError> {
    if f.variables().iter().any(|v| !Var::PLANE.contains(v)) {
        return Err(PolyError::NotPlanar(f.to_string()));
    }
    if f.is_zero() {
        return Ok(0);
    }
    f.plane_degree()
        .ok_or_else(|| PolyError::NotHomogeneous(f.to_string()))
}

/// Symmetric Gram matrix of a ternary quadratic form (char ≠ 2).
pub(crate) fn quadratic_matrix(q: &FpPoly) -> [[u64; 3]; 3] {
    let f = q.field();
    let half = f.inv(2);
    let mut m = [[0u64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut e = [0; NVARS];
            e[i] += 1;
            e[j] += 1;
            let c = q.coefficient(&e);
            m[i][j] = if i == j { c } else { f.mul(c, half) };
        }
    }
    m
}

/// Rank and a basis of the kernel of a 3×3 matrix over 𝔽_p.
pub(crate) fn kernel3(field: PrimeField, m: [[u64; 3]; 3]) -> (usize, Vec<[u64; 3]>) {
    let mut a = m;
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..3 {
        let Some(pr) = (row..3).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(row, pr);
        let inv = field.inv(a[row][col]);
        for c in 0..3 {
            a[row][c] = field.mul(a[row][c], inv);
        }
        for r in 0..3 {
            if r != row && a[r][col] != 0 {
                let k = a[r][col];
                for c in 0..3 {
                    a[r][c] = field.sub(a[r][c], field.mul(k, a[row][c]));
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..3).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&fc| {
            let mut v = [0u64; 3];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(a[r][fc]);
            }
            v
        })
        .collect();
    (pivots.len(), kernel)
}

/// A form of degree ≤ 2 written as `scalar · ∏ factors` with monic linear factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSplit {
    pub scalar: u64,
    pub factors: Vec<FpPoly>,
}

/// Splits a ternary form of degree 1 or 2 into linear factors over 𝔽_p using
/// the quadratic formula along a line avoiding the singular point.
pub fn split_quadratic(q: &FpPoly) -> Result<LinearSplit, PolyError> {
    let field = q.field();
    let deg = homogeneous_plane_degree(q)?;
    if q.is_zero() {
        return Err(PolyError::NotSplit(q.to_string()));
    }
    match deg {
        0 => {
            return Ok(LinearSplit {
                scalar: q.constant_term(),
                factors: vec![],
            })
        }
        1 => {
            return Ok(LinearSplit {
                scalar: q.leading_coefficient(),
                factors: vec![q.monic()],
            })
        }
        2 => {}
        _ => return Err(PolyError::DegreeTooHigh(q.to_string())),
    }
    let (rank, kernel) = kernel3(field, quadratic_matrix(q));
    if rank == 3 {
        return Err(PolyError::NotSplit(q.to_string()));
    }
    let k = kernel[0];
    // a coordinate line missing the singular point k
    let axis = (0..3).find(|&i| k[i] != 0).unwrap();
    let mut coords = [0i64; 3];
    coords[axis] = 1;
    let transversal = FpPoly::linear(field, coords);
    let [p1, p2] = line_points(&transversal)?;
    let restricted = restrict_to_line(q, &transversal)?;
    let roots = binary_quadratic_roots(&restricted.form)?;
    let mut factors: Vec<FpPoly> = roots
        .iter()
        .map(|&(s, r)| {
            let pt = [0, 1, 2].map(|i| field.add(field.mul(s, p1[i]), field.mul(r, p2[i])));
            let c = cross(field, k, pt);
            let mut lf = FpPoly::zero(field);
            for (i, v) in Var::PLANE.into_iter().enumerate() {
                lf = &lf + &FpPoly::var(field, v).scale(c[i]);
            }
            lf.monic()
        })
        .collect();
    factors.sort_by_key(|f| f.to_string());
    let prod = factors.iter().fold(FpPoly::one(field), |a, b| &a * b);
    let scalar = field.mul(
        q.leading_coefficient(),
        field.inv(prod.leading_coefficient()),
    );
    debug_assert_eq!(prod.scale(scalar), *q);
    Ok(LinearSplit { scalar, factors })
}

/// The two roots `(s, r)` (with multiplicity) of a nonzero binary quadratic
/// form in `x = s`, `y = r`.
fn binary_quadratic_roots(form: &FpPoly) -> Result<[(u64, u64); 2], PolyError> {
    let field = form.field();
    let coef = |ex: u32, ey: u32| {
        let mut e = [0; NVARS];
        e[0] = ex;
        e[1] = ey;
        form.coefficient(&e)
    };
    let (a, b, c) = (coef(2, 0), coef(1, 1), coef(0, 2));
    if a == 0 {
        // r·(b·s + c·r)
        return Ok([(1, 0), (field.neg(c), b)]);
    }
    let disc = field.sub(field.mul(b, b), field.mul(4, field.mul(a, c)));
    let root = field
        .sqrt(disc)
        .ok_or_else(|| PolyError::NotSplit(form.to_string()))?;
    let inv2a = field.inv(field.mul(2, a));
    let s1 = field.mul(field.sub(root, b), inv2a);
    let s2 = field.mul(field.sub(field.neg(root), b), inv2a);
    Ok([(s1, 1), (s2, 1)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{is_square_mod_constants, parse, Domain};

    fn p13(s: &str) -> FpPoly {
        parse(s, &Domain::plane(13).unwrap()).unwrap()
    }

    #[test]
    fn restrict_simple() {
        // x on the line y = 0 is nonzero
        let r = restrict_to_line(&p13("x"), &p13("y")).unwrap();
        assert!(!r.is_zero());
        let r = restrict_to_line(&p13("x*y"), &p13("y")).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn restriction_of_square_is_square() {
        let f = p13("x^2+y*z");
        let big_f = f.pow(2);
        for l in ["x+2*y", "z", "y-3*z", "x"] {
            let l = p13(l);
            let rf = restrict_to_line(&f, &l).unwrap();
            let rsq = restrict_to_line(&big_f, &l).unwrap();
            assert_eq!(rsq.form, rf.form.pow(2));
            assert!(is_square_mod_constants(&rsq.form));
        }
    }

    #[test]
    fn degree_at_infinity() {
        // line z = 0: parameter point P1 = (1,0,0); x vanishes there? no, y does
        let r = restrict_to_line(&p13("y^2*x"), &p13("z")).unwrap();
        assert_eq!(r.degree, 3);
        assert_eq!(r.univariate().degree_in(Var::X), Some(1));
        assert_eq!(r.degree_at_infinity(), 2);
    }

    #[test]
    fn splits_example_quadratics() {
        let s = split_quadratic(&p13("x^2+x*z+z^2")).unwrap();
        assert_eq!(s.scalar, 1);
        let names: Vec<String> = s.factors.iter().map(|f| f.to_string()).collect();
        assert_eq!(names, vec!["x + 4*z", "x - 3*z"]);
        // x - 9z and x + 4z agree mod 13
        assert_eq!(p13("x-9*z"), p13("x+4*z"));
        assert!(matches!(
            split_quadratic(&p13("x^2+y^2+z^2")),
            Err(PolyError::NotSplit(_))
        ));
        // x^2 + z^2 splits because -1 is a square mod 13
        assert!(split_quadratic(&p13("x^2+z^2")).is_ok());
        let s = split_quadratic(&p13("(x+y)^2")).unwrap();
        assert_eq!(s.factors, vec![p13("x+y"), p13("x+y")]);
        let s = split_quadratic(&p13("2*x*y")).unwrap();
        assert_eq!(s.scalar, 2);
        assert!(split_quadratic(&p13("x^2+2*z^2")).is_err());
    }

    #[test]
    fn intersection() {
        let p = intersection_point(&p13("x-3*z"), &p13("y-3*z")).unwrap();
        assert_eq!(p, Some([1, 1, 9]));
        assert_eq!(intersection_point(&p13("x"), &p13("2*x")).unwrap(), None);
        assert_eq!(evaluate(&p13("x"), [1, 0, 0]).unwrap(), 1);
        assert!(evaluate(&p13("x"), [0, 0, 13]).is_err());
    }
}
