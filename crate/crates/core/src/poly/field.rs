//! Arithmetic in the prime field F_p.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} must be an odd prime greater than 2")]
    TooSmall(u64),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the supported bound 2^31")]
    TooLarge(u64),
}

/// The field F_p for an odd prime p. Elements are plain `u64` values in
/// `[0, p)`; the field is the context for all coefficient arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Primality is checked by trial division, which caps the practical
    /// modulus; coefficients stay in word range either way.
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p <= 2 {
            return Err(FieldError::TooSmall(p));
        }
        if p >= 1 << 31 {
            return Err(FieldError::TooLarge(p));
        }
        if p % 2 == 0 {
            return Err(FieldError::NotPrime(p));
        }
        let mut d = 3;
        while d * d <= p {
            if p % d == 0 {
                return Err(FieldError::NotPrime(p));
            }
            d += 2;
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Canonical representative of an arbitrary signed integer.
    pub fn from_i64(&self, x: i64) -> u64 {
        let p = self.p as i64;
        (((x % p) + p) % p) as u64
    }

    pub fn from_u64(&self, x: u64) -> u64 {
        x % self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    /// Panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "zero has no inverse");
        assert!(a < self.p);
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "modulus is prime, gcd must be 1");
        self.from_i64(t0)
    }

    pub fn div(&self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b))
    }

    /// Signed representative in `(-p/2, p/2]`, used for printing.
    pub fn signed(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_validates() {
        assert!(PrimeField::new(32003).is_ok());
        assert!(PrimeField::new(101).is_ok());
        assert_eq!(PrimeField::new(2), Err(FieldError::TooSmall(2)));
        assert_eq!(PrimeField::new(0), Err(FieldError::TooSmall(0)));
        assert_eq!(PrimeField::new(9), Err(FieldError::NotPrime(9)));
        assert_eq!(PrimeField::new(32001), Err(FieldError::NotPrime(32001)));
        assert_eq!(
            PrimeField::new(1 << 31),
            Err(FieldError::TooLarge(1 << 31))
        );
    }

    #[test]
    fn every_nonzero_element_has_inverse_full_sweep() {
        for p in [3, 101, 10007] {
            let f = PrimeField::new(p).unwrap();
            for a in 1..p {
                let b = f.inv(a);
                assert_eq!(f.mul(a, b), 1, "a = {a}, p = {p}");
            }
        }
    }

    #[test]
    fn signed_representatives() {
        let f = PrimeField::new(101).unwrap();
        assert_eq!(f.signed(1), 1);
        assert_eq!(f.signed(100), -1);
        assert_eq!(f.signed(50), 50);
        assert_eq!(f.signed(51), -50);
        assert_eq!(f.from_i64(-1), 100);
        assert_eq!(f.from_i64(-202), 0);
    }

    #[test]
    fn arithmetic_mod_p() {
        let f = PrimeField::new(32003).unwrap();
        assert_eq!(f.add(32002, 5), 4);
        assert_eq!(f.sub(3, 5), 32001);
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.mul(32002, 32002), 1);
    }
}
