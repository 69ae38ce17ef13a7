//! Ring and field abstractions used throughout the crate.
//!
//! Arithmetic contexts are separate from element values: a context object
//! (e.g. [`crate::algebra::Fp`]) implements [`Ring`] or [`Field`] and all
//! operations are methods on the context. This keeps elements small (a bare
//! `u64` for prime fields) and lets the same generic code run over prime
//! fields, extension fields, the rationals and Laurent series fields.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A commutative ring with identity.
pub trait Ring {
    type El: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn from_i64(&self, n: i64) -> Self::El;

    fn is_zero(&self, a: &Self::El) -> bool;
    fn is_one(&self, a: &Self::El) -> bool {
        *a == self.one()
    }
    fn eq_el(&self, a: &Self::El, b: &Self::El) -> bool {
        a == b
    }

    fn add_assign(&self, a: &mut Self::El, b: &Self::El) {
        *a = self.add(a, b);
    }
    fn mul_i64(&self, a: &Self::El, n: i64) -> Self::El {
        self.mul(a, &self.from_i64(n))
    }
    fn square(&self, a: &Self::El) -> Self::El {
        self.mul(a, a)
    }
    /// a*b + c in one call; contexts may override with a fused form.
    fn mul_add(&self, a: &Self::El, b: &Self::El, c: &Self::El) -> Self::El {
        self.add(&self.mul(a, b), c)
    }
    fn pow_u64(&self, a: &Self::El, mut e: u64) -> Self::El {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.square(&base);
            e >>= 1;
        }
        acc
    }
}

/// A field: a ring in which every nonzero element is invertible.
pub trait Field: Ring {
    /// Multiplicative inverse. Panics on zero; use [`Field::try_inv`] when the
    /// input may vanish.
    fn inv(&self, a: &Self::El) -> Self::El {
        self.try_inv(a).expect("inverse of zero")
    }
    fn try_inv(&self, a: &Self::El) -> Option<Self::El>;
    fn div(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.mul(a, &self.inv(b))
    }
}

/// The ring of integers, with `BigInt` elements.
#[derive(Clone, Copy, Debug, Default)]
pub struct ZZ;

impl Ring for ZZ {
    type El = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
}

/// The field of rational numbers, with `BigRational` elements.
#[derive(Clone, Copy, Debug, Default)]
pub struct QQ;

impl Ring for QQ {
    type El = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

impl Field for QQ {
    fn try_inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
}

/// Exact integer square root test; returns the root if `n` is a perfect square.
pub fn perfect_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}
