use crate::error::{Error, Result};

/// The prime field F_p, 2 <= p <= 2^31 - 1.
///
/// Elements are canonical representatives `0..p` stored as `u32`; every
/// product goes through a 64-bit intermediate before reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldPrime {
    p: u32,
}

pub const MAX_PRIME: u64 = (1 << 31) - 1;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldPrime {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldPrime { p: p as u32 })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        if s >= self.p as u64 {
            (s - self.p as u64) as u32
        } else {
            s as u32
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, a: u32, mut n: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1u32 % self.p;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    /// `a^(p^e)`, computed by `e` successive p-th powers.
    pub fn frob(&self, a: u32, e: u32) -> u32 {
        let mut x = a;
        for _ in 0..e {
            x = self.pow(x, self.p as u64);
        }
        x
    }
}
