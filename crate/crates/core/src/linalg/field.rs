use serde::{Deserialize, Serialize};

use super::LinalgError;

/// Largest admissible modulus. Keeping `p < 2^16` lets inner products of
/// length up to `2^32` accumulate in a `u64` without intermediate reduction.
pub const MAX_MODULUS: u32 = 1 << 16;

/// The prime field GF(p). Scalars are plain `u32` values in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, LinalgError> {
        if p >= MAX_MODULUS {
            return Err(LinalgError::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(self.reduce(t0))
    }

    #[inline]
    pub fn div(self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    /// Centered representative in `(-p/2, p/2]`, used for display.
    pub fn centered(self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
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
    fn rejects_composites_and_large_moduli() {
        assert!(matches!(
            PrimeField::new(91),
            Err(LinalgError::NotPrime(91))
        ));
        assert!(matches!(PrimeField::new(1), Err(LinalgError::NotPrime(1))));
        assert!(matches!(
            PrimeField::new(65537),
            Err(LinalgError::ModulusOutOfRange(_))
        ));
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(65521).is_ok());
    }

    #[test]
    fn inverses_are_exact() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101 {
            let ia = f.inv(a).unwrap();
            assert_eq!(f.mul(a, ia), 1);
        }
        assert_eq!(f.inv(0), None);
        assert_eq!(f.centered(100), -1);
        assert_eq!(f.reduce(-3), 98);
    }

    #[test]
    fn fermat() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.pow(a, 6), 1);
        }
    }
}
