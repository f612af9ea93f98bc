use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Element `c₀ + c₁ζ + c₂ζ² + c₃ζ³` of ℚ(ζ₈), reduced modulo `ζ⁴ + 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloElem {
    c: [BigRational; 4],
}

impl CycloElem {
    pub fn new(c: [BigRational; 4]) -> Self {
        Self { c }
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        Self {
            c: c.map(|x| BigRational::from_integer(BigInt::from(x))),
        }
    }

    pub fn zero() -> Self {
        Self::from_ints([0; 4])
    }

    pub fn one() -> Self {
        Self::from_ints([1, 0, 0, 0])
    }

    pub fn integer(n: i64) -> Self {
        Self::from_ints([n, 0, 0, 0])
    }

    /// `ζᵏ` for the primitive eighth root of unity `ζ`.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut c = [0i64; 4];
        if k < 4 {
            c[k] = 1;
        } else {
            c[k - 4] = -1;
        }
        Self::from_ints(c)
    }

    /// `iᵏ` with `i = ζ²`.
    pub fn i_pow(k: i64) -> Self {
        Self::zeta_pow(2 * k)
    }

    pub fn i() -> Self {
        Self::zeta_pow(2)
    }

    /// `√2 = ζ − ζ³`.
    pub fn sqrt2() -> Self {
        Self::from_ints([0, 1, 0, -1])
    }

    pub fn coords(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// Inverse via the 4×4 multiplication matrix; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // columns: self·ζʲ
        let cols: Vec<CycloElem> = (0..4).map(|j| self * &Self::zeta_pow(j)).collect();
        let mut a: Vec<Vec<BigRational>> = (0..4)
            .map(|r| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c.c[r].clone()).collect();
                row.push(if r == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        for col in 0..4 {
            let p = (col..4).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, p);
            let inv = a[col][col].recip();
            for v in a[col].iter_mut() {
                *v = &*v * &inv;
            }
            let pr = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (v, pv) in row.iter_mut().zip(&pr) {
                        *v -= &f * pv;
                    }
                }
            }
        }
        let x: Vec<BigRational> = a.into_iter().map(|mut r| r.pop().unwrap()).collect();
        Some(Self {
            c: [x[0].clone(), x[1].clone(), x[2].clone(), x[3].clone()],
        })
    }
}

impl Add for &CycloElem {
    type Output = CycloElem;
    fn add(self, rhs: &CycloElem) -> CycloElem {
        CycloElem {
            c: [0, 1, 2, 3].map(|i| &self.c[i] + &rhs.c[i]),
        }
    }
}

impl Sub for &CycloElem {
    type Output = CycloElem;
    fn sub(self, rhs: &CycloElem) -> CycloElem {
        CycloElem {
            c: [0, 1, 2, 3].map(|i| &self.c[i] - &rhs.c[i]),
        }
    }
}

impl Neg for &CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        CycloElem {
            c: self.c.clone().map(|x| -x),
        }
    }
}

impl Mul for &CycloElem {
    type Output = CycloElem;
    fn mul(self, rhs: &CycloElem) -> CycloElem {
        let mut out: [BigRational; 4] = Default::default();
        for i in 0..4 {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if rhs.c[j].is_zero() {
                    continue;
                }
                let prod = &self.c[i] * &rhs.c[j];
                let k = i + j;
                // ζ⁴ = −1
                if k < 4 {
                    out[k] += prod;
                } else {
                    out[k - 4] -= prod;
                }
            }
        }
        CycloElem { c: out }
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "ζ", "ζ^2", "ζ^3"];
        let parts: Vec<String> = self
            .c
            .iter()
            .zip(names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| match (n, c.is_one()) {
                ("", _) => c.to_string(),
                (n, true) => n.to_string(),
                (n, false) => format!("({c})*{n}"),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElem({self})")
    }
}
