//! Division-polynomial sequences evaluated at the marked point, as elliptic
//! divisibility sequences over any ring with exact division.
//!
//! For E_{b,c} with P = (0,0) the sequence W_n = psi_n(P) starts
//!   W_1 = 1, W_2 = -b, W_3 = -b^3, W_4 = b^5 c
//! and satisfies
//!   W_{2m+1} = W_{m+2} W_m^3 - W_{m-1} W_{m+1}^3
//!   W_{2m}   = (W_m / W_2) (W_{m+2} W_{m-1}^2 - W_{m-2} W_{m+1}^2).
//! P has exact order N (on a nonsingular curve) iff W_N = 0 and W_d != 0 for
//! every proper divisor d of N.
//!
//! The same recurrences drive x-coordinate multiplication maps over finite
//! fields through the quadratic extension by psi_2 (see [`QuadPsiRing`]).

use crate::algebra::ring::{Field, Ring};
use crate::algebra::zpoly::{self, Zxy};
use num_bigint::BigInt;
use std::collections::HashMap;

/// A ring supporting the exact divisions the EDS recurrences need.
pub trait ExactDivRing: Ring {
    /// a / b, which the caller guarantees to be exact; panics otherwise.
    fn div_exact(&self, a: &Self::El, b: &Self::El) -> Self::El;
}

/// Z[b,c] as an EDS coefficient ring (b = x-variable, c = y-variable).
#[derive(Clone, Copy, Debug, Default)]
pub struct ZxyRing;

impl Ring for ZxyRing {
    type El = Zxy;
    fn zero(&self) -> Zxy {
        zpoly::zxy_zero()
    }
    fn one(&self) -> Zxy {
        zpoly::zxy_const(1)
    }
    fn add(&self, a: &Zxy, b: &Zxy) -> Zxy {
        zpoly::zxy_add(a, b)
    }
    fn sub(&self, a: &Zxy, b: &Zxy) -> Zxy {
        zpoly::zxy_sub(a, b)
    }
    fn neg(&self, a: &Zxy) -> Zxy {
        zpoly::zxy_neg(a)
    }
    fn mul(&self, a: &Zxy, b: &Zxy) -> Zxy {
        zpoly::zxy_mul(a, b)
    }
    fn from_i64(&self, n: i64) -> Zxy {
        zpoly::zxy_const(n)
    }
    fn is_zero(&self, a: &Zxy) -> bool {
        zpoly::zxy_is_zero(a)
    }
}

impl ExactDivRing for ZxyRing {
    fn div_exact(&self, a: &Zxy, b: &Zxy) -> Zxy {
        if zpoly::zxy_is_zero(a) {
            return zpoly::zxy_zero();
        }
        if zpoly::zxy_deg_y(b) == 0 {
            // divisor is a Z[x] element
            return zpoly::zxy_div_zx_exact(a, &b[0]);
        }
        zpoly::zxy_div_exact(a, b)
    }
}

/// Univariate polynomials over a field, as an EDS coefficient ring.
#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    pub base: F,
}

impl<F: Field> Ring for PolyRing<F> {
    type El = Vec<F::El>;
    fn zero(&self) -> Vec<F::El> {
        vec![]
    }
    fn one(&self) -> Vec<F::El> {
        vec![self.base.one()]
    }
    fn add(&self, a: &Vec<F::El>, b: &Vec<F::El>) -> Vec<F::El> {
        crate::algebra::poly::add(&self.base, a, b)
    }
    fn sub(&self, a: &Vec<F::El>, b: &Vec<F::El>) -> Vec<F::El> {
        crate::algebra::poly::sub(&self.base, a, b)
    }
    fn neg(&self, a: &Vec<F::El>) -> Vec<F::El> {
        crate::algebra::poly::neg(&self.base, a)
    }
    fn mul(&self, a: &Vec<F::El>, b: &Vec<F::El>) -> Vec<F::El> {
        crate::algebra::poly::mul(&self.base, a, b)
    }
    fn from_i64(&self, n: i64) -> Vec<F::El> {
        crate::algebra::poly::constant(&self.base, self.base.from_i64(n))
    }
    fn is_zero(&self, a: &Vec<F::El>) -> bool {
        a.is_empty()
    }
}

impl<F: Field> ExactDivRing for PolyRing<F> {
    fn div_exact(&self, a: &Vec<F::El>, b: &Vec<F::El>) -> Vec<F::El> {
        if a.is_empty() {
            return vec![];
        }
        let (q, r) = crate::algebra::poly::divrem(&self.base, a, b);
        assert!(r.is_empty(), "inexact division in PolyRing");
        q
    }
}

impl<F: Field> ExactDivRing for F
where
    F: Field,
{
    fn div_exact(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.div(a, b)
    }
}

/// Memoized EDS over an exact-division ring, seeded with W_2, W_3, W_4.
pub struct Eds<'a, R: ExactDivRing> {
    ring: &'a R,
    memo: HashMap<u64, R::El>,
}

impl<'a, R: ExactDivRing> Eds<'a, R> {
    pub fn new(ring: &'a R, w2: R::El, w3: R::El, w4: R::El) -> Self {
        let mut memo = HashMap::new();
        memo.insert(0, ring.zero());
        memo.insert(1, ring.one());
        memo.insert(2, w2);
        memo.insert(3, w3);
        memo.insert(4, w4);
        Eds { ring, memo }
    }

    /// Seeds for the Tate curve marked point over Z[b,c]:
    /// W_2 = -b, W_3 = -b^3, W_4 = b^5 c.
    pub fn tate_symbolic(ring: &'a ZxyRing) -> Eds<'a, ZxyRing> {
        let b = zpoly::zxy_monomial(BigInt::from(1), 1, 0);
        let c = zpoly::zxy_monomial(BigInt::from(1), 0, 1);
        let w2 = zpoly::zxy_neg(&b);
        let b3 = zpoly::zxy_mul(&zpoly::zxy_mul(&b, &b), &b);
        let w3 = zpoly::zxy_neg(&b3);
        let w4 = zpoly::zxy_mul(&zpoly::zxy_mul(&b3, &zpoly::zxy_mul(&b, &b)), &c);
        Eds::new(ring, w2, w3, w4)
    }

    pub fn get(&mut self, n: u64) -> R::El {
        if let Some(v) = self.memo.get(&n) {
            return v.clone();
        }
        let r = self.ring;
        let v = if n % 2 == 1 {
            let m = n / 2; // n = 2m+1
            let a = r.mul(&self.get(m + 2), &self.cube(m));
            let b = r.mul(&self.get(m - 1), &self.cube(m + 1));
            r.sub(&a, &b)
        } else {
            let m = n / 2;
            let a = r.mul(&self.get(m + 2), &self.square(m - 1));
            let b = r.mul(&self.get(m - 2), &self.square(m + 1));
            let diff = r.sub(&a, &b);
            let num = r.mul(&self.get(m), &diff);
            let w2 = self.get(2);
            r.div_exact(&num, &w2)
        };
        self.memo.insert(n, v.clone());
        v
    }

    fn square(&mut self, n: u64) -> R::El {
        let v = self.get(n);
        self.ring.mul(&v, &v)
    }

    fn cube(&mut self, n: u64) -> R::El {
        let v = self.get(n);
        let v2 = self.ring.mul(&v, &v);
        self.ring.mul(&v2, &v)
    }
}

/// The quadratic extension R[w]/(w^2 - t) used to run point-indexed division
/// polynomial sequences without leaving the x-line: w plays the role of
/// psi_2(P) whose square t = psi_2^2(x(P)) is x-rational. R may itself be a
/// polynomial ring, which yields the x-only division polynomials.
#[derive(Clone, Debug)]
pub struct QuadPsiRing<R: ExactDivRing> {
    pub base: R,
    pub t: R::El,
}

impl<R: ExactDivRing> Ring for QuadPsiRing<R> {
    type El = (R::El, R::El); // alpha + beta w
    fn zero(&self) -> Self::El {
        (self.base.zero(), self.base.zero())
    }
    fn one(&self) -> Self::El {
        (self.base.one(), self.base.zero())
    }
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El {
        (self.base.add(&a.0, &b.0), self.base.add(&a.1, &b.1))
    }
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El {
        (self.base.sub(&a.0, &b.0), self.base.sub(&a.1, &b.1))
    }
    fn neg(&self, a: &Self::El) -> Self::El {
        (self.base.neg(&a.0), self.base.neg(&a.1))
    }
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El {
        // (a0 + a1 w)(b0 + b1 w) = a0b0 + a1b1 t + (a0b1 + a1b0) w
        let x = self.base.add(
            &self.base.mul(&a.0, &b.0),
            &self.base.mul(&self.base.mul(&a.1, &b.1), &self.t),
        );
        let y = self
            .base
            .add(&self.base.mul(&a.0, &b.1), &self.base.mul(&a.1, &b.0));
        (x, y)
    }
    fn from_i64(&self, n: i64) -> Self::El {
        (self.base.from_i64(n), self.base.zero())
    }
    fn is_zero(&self, a: &Self::El) -> bool {
        self.base.is_zero(&a.0) && self.base.is_zero(&a.1)
    }
}

impl<R: ExactDivRing> ExactDivRing for QuadPsiRing<R> {
    fn div_exact(&self, a: &Self::El, b: &Self::El) -> Self::El {
        // a / b = a * conj(b) / norm(b), norm(b) = b0^2 - b1^2 t; the
        // divisions are componentwise-exact for the EDS divisors.
        let norm = self.base.sub(
            &self.base.mul(&b.0, &b.0),
            &self.base.mul(&self.base.mul(&b.1, &b.1), &self.t),
        );
        let conj = (b.0.clone(), self.base.neg(&b.1));
        let prod = self.mul(a, &conj);
        (
            self.base.div_exact(&prod.0, &norm),
            self.base.div_exact(&prod.1, &norm),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::Field as _;

    #[test]
    fn symbolic_small_values() {
        let ring = ZxyRing;
        let mut eds = Eds::<ZxyRing>::tate_symbolic(&ring);
        // W_5 = b^8 (b - c)
        let w5 = eds.get(5);
        let b = zpoly::zxy_monomial(BigInt::from(1), 1, 0);
        let c = zpoly::zxy_monomial(BigInt::from(1), 0, 1);
        let mut expect = zpoly::zxy_sub(&b, &c);
        for _ in 0..8 {
            expect = zpoly::zxy_mul(&expect, &b);
        }
        assert_eq!(w5, expect);
        // W_6 = b^12 (b - c - c^2)
        let w6 = eds.get(6);
        let mut e6 = zpoly::zxy_sub(&zpoly::zxy_sub(&b, &c), &zpoly::zxy_mul(&c, &c));
        for _ in 0..12 {
            e6 = zpoly::zxy_mul(&e6, &b);
        }
        assert_eq!(w6, e6);
    }

    #[test]
    fn eds_recurrence_identity_sampled() {
        // psi_{m+n} psi_{m-n} psi_r^2 = psi_{m+r} psi_{m-r} psi_n^2
        //                              - psi_{n+r} psi_{n-r} psi_m^2
        // sampled at random (b, c) over a prime field.
        use crate::algebra::Fp;
        let f = Fp::new(100003).unwrap();
        for (bv, cv) in [(3i64, 17i64), (99, 5), (12345, 678)] {
            let b = f.from_i64(bv);
            let c = f.from_i64(cv);
            let b3 = f.mul(&f.mul(&b, &b), &b);
            let w2 = f.neg(&b);
            let w3 = f.neg(&b3);
            let w4 = f.mul(&f.mul(&b3, &f.mul(&b, &b)), &c);
            let mut eds = Eds::new(&f, w2, w3, w4);
            for (m, n, r) in [(7u64, 4u64, 2u64), (9, 5, 3), (11, 6, 1), (8, 3, 2)] {
                let lhs = f.mul(
                    &f.mul(&eds.get(m + n), &eds.get(m - n)),
                    &f.square(&eds.get(r)),
                );
                let rhs1 = f.mul(
                    &f.mul(&eds.get(m + r), &eds.get(m - r)),
                    &f.square(&eds.get(n)),
                );
                let rhs2 = f.mul(
                    &f.mul(&eds.get(n + r), &eds.get(n - r)),
                    &f.square(&eds.get(m)),
                );
                assert_eq!(lhs, f.sub(&rhs1, &rhs2), "identity failed at ({m},{n},{r})");
            }
        }
    }
}
