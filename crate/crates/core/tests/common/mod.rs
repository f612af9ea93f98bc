//! Brute-force oracles shared by the property suites and the acceptance run.
//! Nothing here calls into the routines it is used to check.
#![allow(dead_code)]

use dp2_core::exactalg::{IntLattice, IntMatrix};
use num_bigint::BigInt;
use rand::Rng;

pub type Mat = Vec<Vec<i64>>;

pub fn to_i64(m: &IntMatrix) -> Mat {
    m.to_i64_rows().expect("entries fit in i64")
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn random_matrix<R: Rng>(rng: &mut R, max_dim: usize, bound: i64) -> Mat {
    let r = rng.gen_range(1..=max_dim);
    let c = rng.gen_range(1..=max_dim);
    (0..r)
        .map(|_| (0..c).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect()
}

/// Laplace expansion along the first row.
pub fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// gcd of all k×k minors (0 if every minor vanishes).
pub fn determinantal_divisor(m: &Mat, k: usize) -> i128 {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut g = 0;
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<i128>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| m[i][j] as i128).collect())
                .collect();
            g = gcd(g, det(&sub));
        }
    }
    g
}

pub fn rank(m: &Mat) -> usize {
    let n = m.len().min(m.first().map_or(0, Vec::len));
    (1..=n)
        .rev()
        .find(|&k| determinantal_divisor(m, k) != 0)
        .unwrap_or(0)
}

/// Smith invariants from determinantal divisors: `sₖ = dₖ / dₖ₋₁`.
pub fn smith_oracle(m: &Mat) -> Vec<i128> {
    let n = m.len().min(m.first().map_or(0, Vec::len));
    let mut out = Vec::with_capacity(n);
    let mut prev = 1;
    for k in 1..=n {
        let d = determinantal_divisor(m, k);
        if d == 0 {
            out.resize(n, 0);
            break;
        }
        out.push(d / prev);
        prev = d;
    }
    out
}

/// A row lattice with its rank and covolume precomputed.
pub struct RowLattice {
    rows: Mat,
    rank: usize,
    covolume: i128,
}

impl RowLattice {
    pub fn new(rows: &Mat) -> Self {
        let rank = if rows.is_empty() { 0 } else { rank(rows) };
        let covolume = if rank == 0 {
            1
        } else {
            determinantal_divisor(rows, rank)
        };
        Self {
            rows: rows.clone(),
            rank,
            covolume,
        }
    }

    fn extended(&self, v: &[i64]) -> Option<Mat> {
        let mut ext = self.rows.clone();
        ext.push(v.to_vec());
        (rank(&ext) == self.rank).then_some(ext)
    }

    /// `v ∈ ℚ-span`: adjoining `v` keeps the rank.
    pub fn in_rational_span(&self, v: &[i64]) -> bool {
        if v.iter().all(|&x| x == 0) {
            return true;
        }
        self.rank > 0 && self.extended(v).is_some()
    }

    /// `v ∈ ℤ-span`: adjoining `v` keeps the rank and the gcd of maximal minors.
    pub fn contains(&self, v: &[i64]) -> bool {
        if v.iter().all(|&x| x == 0) {
            return true;
        }
        if self.rank == 0 {
            return false;
        }
        self.extended(v)
            .is_some_and(|ext| determinantal_divisor(&ext, self.rank) == self.covolume)
    }
}

pub fn mat_vec(m: &Mat, v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// All vectors of `[−b, b]ⁿ`.
pub fn box_vectors(n: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-b..=b).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn lattice_rows(l: &IntLattice) -> Mat {
    l.basis_vectors()
        .iter()
        .map(|r| r.iter().map(|x| i64::try_from(x).expect("small")).collect())
        .collect()
}

/// Checks every routine of the exact linear algebra module on one matrix
/// against the oracles above. Returns a description of the first mismatch.
pub fn check_exactalg(m: &Mat, other: &Mat) -> Result<(), String> {
    use dp2_core::exactalg::{hnf, intersect, kernel_basis, saturate, snf};
    let im = IntMatrix::from_rows(m);
    let cols = im.ncols();

    let s: Vec<i128> = snf(&im)
        .iter()
        .map(|x| i128::try_from(x).unwrap())
        .collect();
    let want = smith_oracle(m);
    if s != want {
        return Err(format!("snf {m:?}: {s:?} vs oracle {want:?}"));
    }

    let (h, u) = hnf(&im);
    if &u * &im != h {
        return Err(format!("hnf {m:?}: H != U·M"));
    }
    let ud = det(&to_i64(&u)
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect::<Vec<_>>());
    if ud.abs() != 1 {
        return Err(format!("hnf {m:?}: det U = {ud}"));
    }
    let hr = to_i64(&h);
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero = false;
    for (i, row) in hr.iter().enumerate() {
        match row.iter().position(|&x| x != 0) {
            None => seen_zero = true,
            Some(p) => {
                if seen_zero || last_pivot.is_some_and(|q| p <= q) || row[p] <= 0 {
                    return Err(format!("hnf {m:?}: not echelon at row {i}: {hr:?}"));
                }
                if hr[..i].iter().any(|r| r[p] < 0 || r[p] >= row[p]) {
                    return Err(format!("hnf {m:?}: column {p} not reduced: {hr:?}"));
                }
                last_pivot = Some(p);
            }
        }
    }

    let k = kernel_basis(&im);
    let kr = lattice_rows(&k);
    if k.rank() != cols - rank(m) {
        return Err(format!(
            "kernel {m:?}: rank {} vs {}",
            k.rank(),
            cols - rank(m)
        ));
    }
    if kr.iter().any(|v| mat_vec(m, v).iter().any(|&x| x != 0)) {
        return Err(format!("kernel {m:?}: basis vector not in kernel"));
    }
    for v in &box_vectors(cols, if cols <= 4 { 3 } else { 2 }) {
        if mat_vec(m, v).iter().all(|&x| x == 0) && !k.contains(&big(v)) {
            return Err(format!("kernel {m:?}: misses {v:?}"));
        }
    }

    // membership oracles are costly; a smaller box for them
    let boxv = box_vectors(cols, [3, 3, 3, 2, 1][cols - 1]);
    let o1 = RowLattice::new(m);
    let o2 = RowLattice::new(other);
    let l1 = IntLattice::from_i64_rows(cols, m);
    let sat = saturate(&l1);
    for v in &boxv {
        if o1.in_rational_span(v) != sat.contains(&big(v)) {
            return Err(format!("saturate {m:?}: disagrees at {v:?}"));
        }
    }

    let l2 = IntLattice::from_i64_rows(cols, other);
    let meet = intersect(&l1, &l2).map_err(|e| e.to_string())?;
    for v in &boxv {
        let want = o1.contains(v) && o2.contains(v);
        if want != meet.contains(&big(v)) {
            return Err(format!("intersect {m:?} ∩ {other:?}: disagrees at {v:?}"));
        }
    }
    // the box may miss the intersection entirely; its basis must lie in both
    for v in lattice_rows(&meet) {
        if !(o1.contains(&v) && o2.contains(&v)) {
            return Err(format!("intersect {m:?} ∩ {other:?}: {v:?} outside"));
        }
    }
    Ok(())
}

/// A random matrix with the same number of columns as `m`.
pub fn random_partner<R: Rng>(rng: &mut R, m: &Mat, max_dim: usize, bound: i64) -> Mat {
    let cols = m[0].len();
    let r = rng.gen_range(1..=max_dim);
    (0..r)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect()
}

/// Exponent vectors of the degree-`d` monomials in `x, y, z`.
pub fn plane_monomials(d: u32) -> Vec<dp2_core::polyring::Exponents> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            let mut e = [0; dp2_core::polyring::NVARS];
            e[0] = a;
            e[1] = b;
            e[2] = d - a - b;
            out.push(e);
        }
    }
    out
}

/// The form of degree `d` whose coefficients (in [`plane_monomials`] order)
/// are taken cyclically from `coeffs`.
pub fn form(p: u64, d: u32, coeffs: &[u64]) -> dp2_core::polyring::FpPoly {
    use dp2_core::polyring::{FpPoly, PrimeField};
    let field = PrimeField::new(p).expect("odd prime");
    FpPoly::from_terms(
        field,
        plane_monomials(d)
            .into_iter()
            .zip(coeffs.iter().cycle())
            .map(|(e, &c)| (e, c % p)),
    )
}

/// All points of ℙ²(𝔽_p), normalized with first nonzero coordinate 1.
pub fn plane_points(p: u64) -> Vec<[u64; 3]> {
    let mut out = vec![[0, 0, 1]];
    for z in 0..p {
        out.push([0, 1, z]);
        for y in 0..p {
            out.push([1, y, z]);
        }
    }
    out
}

/// Direct evaluation of a plane form at a point.
pub fn eval_form(f: &dp2_core::polyring::FpPoly, pt: [u64; 3]) -> u64 {
    let p = f.prime() as u128;
    let mut acc = 0u128;
    for (e, &c) in f.terms() {
        let mut t = c as u128;
        for i in 0..3 {
            for _ in 0..e[i] {
                t = t * pt[i] as u128 % p;
            }
        }
        acc = (acc + t) % p;
    }
    acc as u64
}
