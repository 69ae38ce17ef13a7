//! Prime fields F_p for word-sized p, in Montgomery representation.
//!
//! Elements are bare `u64` values in Montgomery form; the [`Fp`] context
//! carries the modulus and the Montgomery constants. The modulus must be an
//! odd prime below 2^62 (primality is checked at construction with a
//! deterministic Miller-Rabin witness set).

use super::ring::{Field, Ring};
use crate::error::Error;

/// Context for arithmetic in F_p, p an odd prime < 2^62.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u64,
    /// -p^{-1} mod 2^64
    ninv: u64,
    /// 2^128 mod p, used to convert into Montgomery form
    r2: u64,
    /// 2^64 mod p, the Montgomery image of 1
    r1: u64,
}

impl Fp {
    pub fn new(p: u64) -> Result<Fp, Error> {
        if p < 3 || p & 1 == 0 || p >= (1 << 62) {
            return Err(Error::Algebra(format!(
                "modulus {p} out of range (need odd prime < 2^62)"
            )));
        }
        if !is_prime_u64(p) {
            return Err(Error::Algebra(format!("modulus {p} is not prime")));
        }
        // Newton iteration for p^{-1} mod 2^64.
        let mut inv: u64 = p; // p odd so p ≡ p^{-1} mod 8 seed
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let ninv = inv.wrapping_neg();
        let r1 = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r1 as u128 * r1 as u128) % p as u128) as u64;
        Ok(Fp { p, ninv, r2, r1 })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline(always)]
    fn redc(&self, t: u128) -> u64 {
        // t < p^2 and p < 2^62, so t + m*p < 2^127 never wraps.
        let m = (t as u64).wrapping_mul(self.ninv);
        let r = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    /// Convert an ordinary residue to Montgomery form.
    pub fn to_el(&self, x: u64) -> u64 {
        self.redc((x % self.p) as u128 * self.r2 as u128)
    }

    /// Convert a Montgomery-form element back to an ordinary residue in [0, p).
    pub fn lift(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    pub fn from_i128(&self, n: i128) -> u64 {
        let r = n.rem_euclid(self.p as i128) as u64;
        self.to_el(r)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        self.pow_u64(&a, e)
    }
}

impl Ring for Fp {
    type El = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        self.r1
    }
    #[inline(always)]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline(always)]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline(always)]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline(always)]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.redc(*a as u128 * *b as u128)
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.from_i128(n as i128)
    }
    #[inline(always)]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

impl Field for Fp {
    fn try_inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow_u64(a, self.p - 2))
        }
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    a %= m;
    let mut r: u64 = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for u64 (standard 7-witness set, valid below 3.3e24).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'wit: for &a in &[2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'wit;
            }
        }
        return false;
    }
    true
}

/// Next prime >= n.
pub fn next_prime_u64(mut n: u64) -> u64 {
    if n <= 2 {
        return 2;
    }
    if n & 1 == 0 {
        n += 1;
    }
    while !is_prime_u64(n) {
        n += 2;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn montgomery_roundtrip() {
        let f = Fp::new(1_000_003).unwrap();
        for x in [0u64, 1, 2, 999_999, 1_000_002] {
            assert_eq!(f.lift(f.to_el(x)), x);
        }
    }

    #[test]
    fn field_ops() {
        let f = Fp::new((1 << 61) - 1).unwrap();
        let a = f.to_el(123456789);
        let b = f.to_el(987654321);
        let ab = f.mul(&a, &b);
        assert_eq!(
            f.lift(ab),
            (123456789u128 * 987654321u128 % ((1u128 << 61) - 1)) as u64
        );
        let ai = f.inv(&a);
        assert!(f.is_one(&f.mul(&a, &ai)));
    }

    #[test]
    fn rejects_composite() {
        assert!(Fp::new(91).is_err());
        assert!(Fp::new(2).is_err());
    }

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (2..100).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(
            primes,
            vec![
                2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73,
                79, 83, 89, 97
            ]
        );
        assert!(is_prime_u64(2_147_483_647));
        assert!(!is_prime_u64(3_215_031_751));
    }
}
