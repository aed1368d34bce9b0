//! Prime fields `F_p` with word-sized odd prime modulus.
//!
//! Elements are plain `u32` values kept in canonical form `[0, p)`. Products
//! are reduced with a precomputed Barrett constant, which agrees bit for bit
//! with schoolbook `%`.

use crate::error::{Error, Result};
use std::fmt;

/// Default working prime.
pub const DEFAULT_PRIME: u32 = 32003;
/// Larger prime, selectable for runs that want to mirror the original setup.
pub const PAPER_PRIME: u32 = 10_000_019;

/// A prime field `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
    barrett: u64,
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

impl Default for Fp {
    fn default() -> Self {
        Fp::new(DEFAULT_PRIME).expect("default prime is valid")
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Fp {
    /// Builds `F_p`; `p` must be an odd prime below `2^31`.
    pub fn new(p: u32) -> Result<Self> {
        if p <= 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(Fp {
            p,
            barrett: u64::MAX / p as u64,
        })
    }

    #[inline(always)]
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary `u64`.
    #[inline(always)]
    pub fn reduce(&self, x: u64) -> u32 {
        let q = ((x as u128 * self.barrett as u128) >> 64) as u64;
        let mut r = x - q * self.p as u64;
        while r >= self.p as u64 {
            r -= self.p as u64;
        }
        r as u32
    }

    #[inline(always)]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline(always)]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 * b as u64)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(&self, a: u32) -> Result<u32> {
        let a = a % self.p;
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(t0.rem_euclid(self.p as i64) as u32)
    }

    /// Maps a signed integer into the field.
    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`, used when printing.
    pub fn to_signed(&self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    /// Square root if `a` is a quadratic residue (Tonelli-Shanks).
    pub fn sqrt(&self, a: u32) -> Option<u32> {
        let p = self.p as u64;
        if a == 0 {
            return Some(0);
        }
        if self.pow(a, (p - 1) / 2) != 1 {
            return None;
        }
        let mut q = p - 1;
        let mut s = 0;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = 2u32;
        while self.pow(z, (p - 1) / 2) != self.p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, (q + 1) / 2);
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = self.mul(tt, tt);
                i += 1;
            }
            let b = self.pow(c, 1u64 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r)
    }
}

/// Free-function form of [`Fp::inv`].
pub fn fp_inv(a: u32, p: u32) -> Result<u32> {
    Fp::new(p)?.inv(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_inverses() {
        assert_eq!(fp_inv(3, 7).unwrap(), 5);
        assert_eq!(fp_inv(1, 32003).unwrap(), 1);
        assert!(matches!(fp_inv(0, 7), Err(Error::DivisionByZero)));
        assert!(matches!(fp_inv(14, 7), Err(Error::DivisionByZero)));
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(Fp::new(2).is_err());
        assert!(Fp::new(9).is_err());
        assert!(Fp::new(32003).is_ok());
        assert!(Fp::new(PAPER_PRIME).is_ok());
    }

    #[test]
    fn random_inverses() {
        let f = Fp::new(32003).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let a = rng.gen_range(1..f.p());
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn barrett_matches_schoolbook() {
        for p in [32003u32, PAPER_PRIME, 2147483647] {
            let f = Fp::new(p).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(p as u64);
            for _ in 0..10_000 {
                let x: u64 = rng.gen();
                assert_eq!(f.reduce(x) as u64, x % p as u64);
            }
            assert_eq!(f.reduce(u64::MAX) as u64, u64::MAX % p as u64);
        }
    }

    #[test]
    fn field_axioms_random_triples() {
        let f = Fp::new(PAPER_PRIME).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let (a, b, c) = (
                rng.gen_range(0..f.p()),
                rng.gen_range(0..f.p()),
                rng.gen_range(0..f.p()),
            );
            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn square_roots() {
        let f = Fp::new(32003).unwrap();
        for a in 1..2000u32 {
            if let Some(r) = f.sqrt(a) {
                assert_eq!(f.mul(r, r), a);
            }
        }
        let g = Fp::new(PAPER_PRIME).unwrap();
        assert_eq!(g.mul(g.sqrt(4).unwrap(), g.sqrt(4).unwrap()), 4);
    }
}
