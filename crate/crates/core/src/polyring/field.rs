use super::PolyError;

/// The prime field 𝔽_p for an odd prime `p < 2³²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, PolyError> {
        if p == 2 {
            return Err(PolyError::CharacteristicTwo);
        }
        if p >= 1 << 32 || !is_prime(p) {
            return Err(PolyError::NotAnOddPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn reduce_i64(self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn neg(self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn is_square(self, a: u64) -> bool {
        a.is_multiple_of(self.p) || self.pow(a, (self.p - 1) / 2) == 1
    }

    /// A square root of `a`, if one exists (Tonelli–Shanks).
    pub fn sqrt(self, a: u64) -> Option<u64> {
        let p = self.p;
        let a = a % p;
        if a == 0 {
            return Some(0);
        }
        if !self.is_square(a) {
            return None;
        }
        let mut q = p - 1;
        let mut s = 0;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let z = (2..p).find(|&z| !self.is_square(z)).unwrap();
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, q.div_ceil(2));
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = self.mul(tt, tt);
                i += 1;
            }
            let b = self.pow(c, 1 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r)
    }

    /// Symmetric representative in `(-p/2, p/2]`, for printing.
    pub fn signed(self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_characteristics() {
        assert_eq!(PrimeField::new(2), Err(PolyError::CharacteristicTwo));
        assert_eq!(PrimeField::new(15), Err(PolyError::NotAnOddPrime(15)));
        assert!(PrimeField::new(13).is_ok());
    }

    #[test]
    fn sqrt_roundtrip() {
        for p in [3u64, 5, 13, 17, 97, 7919] {
            let f = PrimeField::new(p).unwrap();
            for a in 0..p.min(200) {
                match f.sqrt(a) {
                    Some(r) => assert_eq!(f.mul(r, r), a),
                    None => assert!(!f.is_square(a)),
                }
            }
        }
    }

    #[test]
    fn inverse() {
        let f = PrimeField::new(13).unwrap();
        for a in 1..13 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }
}
