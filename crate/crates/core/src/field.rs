//! The prime field F_p, p < 2^16, with residues stored as canonical `u32`
//! values in `0..p`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_PRIME: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u32);

impl Prime {
    /// Validates `p` by trial division.
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_PRIME {
            return Err(Error::PrimeTooLarge(p));
        }
        if p < 2 {
            return Err(Error::NotPrime(p));
        }
        let mut q = 2;
        while q * q <= p {
            if p.is_multiple_of(q) {
                return Err(Error::NotPrime(p));
            }
            q += 1;
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u32 {
        (x % self.0 as u64) as u32
    }

    #[inline]
    pub fn reduce_signed(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.0), "zero has no inverse in F_{}", self.0);
        self.pow(a, self.0 as u64 - 2)
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(self) -> u32 {
        let p = self.0 as u64;
        if p == 2 {
            return 1;
        }
        let mut divisors = Vec::new();
        let mut n = p - 1;
        let mut q = 2;
        while q * q <= n {
            if n.is_multiple_of(q) {
                divisors.push(q);
                while n.is_multiple_of(q) {
                    n /= q;
                }
            }
            q += 1;
        }
        if n > 1 {
            divisors.push(n);
        }
        (2..p as u32)
            .find(|&g| divisors.iter().all(|&q| self.pow(g, (p - 1) / q) != 1))
            .expect("multiplicative group of a prime field is cyclic")
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0 as u64
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_out_of_range() {
        assert_eq!(Prime::new(1), Err(Error::NotPrime(1)));
        assert_eq!(Prime::new(9), Err(Error::NotPrime(9)));
        assert_eq!(Prime::new(65536), Err(Error::PrimeTooLarge(65536)));
        assert!(Prime::new(65521).is_ok());
        assert!(Prime::new(2).is_ok());
    }

    #[test]
    fn inverses_and_roots() {
        let p = Prime::new(13).unwrap();
        for a in 1..13 {
            assert_eq!(p.mul(a, p.inv(a)), 1);
        }
        assert_eq!(p.primitive_root(), 2);
        assert_eq!(Prime::new(7).unwrap().primitive_root(), 3);
        assert_eq!(Prime::new(2).unwrap().primitive_root(), 1);
    }
}
