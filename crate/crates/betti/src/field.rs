//! Prime-field coefficient arithmetic.
//!
//! Boundary coefficients live in `F_p` for a prime `p` (default 2). Rank
//! computations need every nonzero coefficient to be invertible, which is
//! what restricts the coefficients to a field rather than a general ring.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
}

/// The field `F_p` of integers modulo a prime `p`.
///
/// Elements are `u32` values already reduced into `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: 2 }
    }
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse of a nonzero element, via Fermat's little
    /// theorem (`a^(p-2) mod p`).
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0 && a < self.p);
        let mut base = a as u64;
        let mut exp = self.p as u64 - 2;
        let modulus = self.p as u64;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % modulus;
            }
            base = base * base % modulus;
            exp >>= 1;
        }
        acc as u32
    }

    /// The boundary coefficient `(-1)^i mod p` for the `i`-th face in
    /// vertex-omission order.
    pub fn face_sign(&self, omitted_position: usize) -> u32 {
        if omitted_position.is_multiple_of(2) {
            1
        } else {
            self.neg(1)
        }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
