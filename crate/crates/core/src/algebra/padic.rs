//! p-adic numbers with explicit precision tracking, and Hensel lifting of
//! simple roots.
//!
//! Precision is pessimistic: every operation computes the precision of its
//! result from its inputs, and accessors that need more digits than are known
//! return an error instead of fabricating them.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A p-adic number u * p^val known to `prec` significant p-adic digits of u.
/// Zero is represented with `unit = 0` and an "infinite" valuation flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Padic {
    pub prime: BigInt,
    /// Unit part, in [0, p^prec), coprime to p unless the number is zero.
    pub unit: BigInt,
    pub valuation: i64,
    /// Number of known digits of the unit part.
    pub precision: u32,
    pub is_zero: bool,
}

impl Padic {
    pub fn zero(prime: &BigInt, precision: u32) -> Padic {
        Padic {
            prime: prime.clone(),
            unit: BigInt::zero(),
            valuation: 0,
            precision,
            is_zero: true,
        }
    }

    /// Build from an integer, normalizing out powers of p.
    pub fn from_bigint(prime: &BigInt, n: &BigInt, precision: u32) -> Padic {
        if n.is_zero() {
            return Padic::zero(prime, precision);
        }
        let mut v = 0i64;
        let mut u = n.clone();
        while (&u % prime).is_zero() {
            u /= prime;
            v += 1;
        }
        let m = prime.pow(precision);
        Padic {
            prime: prime.clone(),
            unit: u.mod_floor(&m),
            valuation: v,
            precision,
            is_zero: false,
        }
    }

    /// The value as an integer mod p^k. Errors if fewer than k digits are
    /// known past the valuation, or if the valuation is negative.
    pub fn to_residue(&self, k: u32) -> Result<BigInt> {
        if self.is_zero {
            return Ok(BigInt::zero());
        }
        if self.valuation < 0 {
            return Err(Error::Algebra("negative valuation".into()));
        }
        if self.precision + (self.valuation as u32) < k {
            return Err(Error::Algebra(format!(
                "requested {k} digits but only {} known",
                self.precision as i64 + self.valuation
            )));
        }
        let m = self.prime.pow(k);
        Ok((&self.unit * self.prime.pow(self.valuation as u32)).mod_floor(&m))
    }

    fn align(a: &Padic, b: &Padic) -> (i64, BigInt, BigInt, u32) {
        // Common valuation floor and the available absolute precision.
        let v = a.valuation.min(b.valuation);
        let pa = a.precision as i64 + a.valuation - v;
        let pb = b.precision as i64 + b.valuation - v;
        let prec = pa.min(pb).max(0) as u32;
        let m = a.prime.pow(prec);
        let ua = (&a.unit * a.prime.pow((a.valuation - v) as u32)).mod_floor(&m);
        let ub = (&b.unit * b.prime.pow((b.valuation - v) as u32)).mod_floor(&m);
        (v, ua, ub, prec)
    }

    pub fn add(&self, other: &Padic) -> Padic {
        assert_eq!(self.prime, other.prime);
        if self.is_zero {
            return other.clone();
        }
        if other.is_zero {
            return self.clone();
        }
        let (v, ua, ub, prec) = Padic::align(self, other);
        let m = self.prime.pow(prec);
        let s = (ua + ub).mod_floor(&m);
        normalize(&self.prime, s, v, prec)
    }

    pub fn sub(&self, other: &Padic) -> Padic {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Padic {
        if self.is_zero {
            return self.clone();
        }
        let m = self.prime.pow(self.precision);
        Padic {
            unit: (-&self.unit).mod_floor(&m),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Padic) -> Padic {
        assert_eq!(self.prime, other.prime);
        if self.is_zero || other.is_zero {
            return Padic::zero(&self.prime, self.precision.min(other.precision));
        }
        let prec = self.precision.min(other.precision);
        let m = self.prime.pow(prec);
        Padic {
            prime: self.prime.clone(),
            unit: (&self.unit * &other.unit).mod_floor(&m),
            valuation: self.valuation + other.valuation,
            precision: prec,
            is_zero: false,
        }
    }

    pub fn inv(&self) -> Result<Padic> {
        if self.is_zero {
            return Err(Error::Algebra("inverse of p-adic zero".into()));
        }
        let m = self.prime.pow(self.precision);
        let inv = super::zint::mod_inverse(&self.unit, &m)
            .ok_or_else(|| Error::Algebra("unit not invertible".into()))?;
        Ok(Padic {
            prime: self.prime.clone(),
            unit: inv,
            valuation: -self.valuation,
            precision: self.precision,
            is_zero: false,
        })
    }
}

fn normalize(prime: &BigInt, mut u: BigInt, mut v: i64, prec: u32) -> Padic {
    if u.is_zero() {
        return Padic::zero(prime, prec);
    }
    let mut prec = prec as i64;
    while (&u % prime).is_zero() {
        u /= prime;
        v += 1;
        prec -= 1;
    }
    if prec <= 0 {
        // Cancellation consumed all known digits.
        return Padic::zero(prime, 0);
    }
    Padic {
        prime: prime.clone(),
        unit: u,
        valuation: v,
        precision: prec as u32,
        is_zero: false,
    }
}

/// Evaluate an integer polynomial mod p^k.
fn eval_mod(f: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in f.iter().rev() {
        acc = (acc * x + c).mod_floor(m);
    }
    acc
}

/// Hensel-lift a simple root of f mod p to a root mod p^precision, by
/// quadratically convergent Newton iteration. `f` has integer coefficients
/// (clear denominators first; p must not divide the cleared denominator).
pub fn hensel_lift_root(
    f: &[BigInt],
    prime: &BigInt,
    seed_root: &BigInt,
    precision: u32,
) -> Result<Padic> {
    let fp: Vec<BigInt> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    if !eval_mod(f, seed_root, prime).is_zero() {
        return Err(Error::Algebra("seed is not a root mod p".into()));
    }
    if eval_mod(&fp, seed_root, prime).is_zero() {
        return Err(Error::Algebra(
            "singular root, choose another splitting prime".into(),
        ));
    }
    let mut k = 1u32;
    let mut x = seed_root.mod_floor(prime);
    while k < precision {
        let k2 = (2 * k).min(precision);
        let m = prime.pow(k2);
        let fx = eval_mod(f, &x, &m);
        let dfx = eval_mod(&fp, &x, &m);
        let inv = super::zint::mod_inverse(&dfx, &m)
            .ok_or_else(|| Error::Algebra("derivative not invertible during lift".into()))?;
        x = (&x - fx * inv).mod_floor(&m);
        k = k2;
    }
    let m = prime.pow(precision);
    debug_assert!(eval_mod(f, &x, &m).is_zero());
    Ok(Padic::from_bigint(prime, &x, precision))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_mod_7_cubed() {
        let f: Vec<BigInt> = [-2i64, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        let p = BigInt::from(7);
        let r = hensel_lift_root(&f, &p, &BigInt::from(3), 3).unwrap();
        let x = r.to_residue(3).unwrap();
        // oracle: direct congruence check
        assert_eq!((&x * &x).mod_floor(&BigInt::from(343)), BigInt::from(2));
        assert_eq!(x.mod_floor(&p), BigInt::from(3));
    }

    #[test]
    fn linear_is_constant() {
        let f: Vec<BigInt> = [-5i64, 1].iter().map(|&c| BigInt::from(c)).collect();
        for &p in &[3i64, 7, 11] {
            let p = BigInt::from(p);
            let seed = BigInt::from(5).mod_floor(&p);
            let r = hensel_lift_root(&f, &p, &seed, 6).unwrap();
            assert_eq!(r.to_residue(6).unwrap(), BigInt::from(5));
        }
    }

    #[test]
    fn singular_root_rejected() {
        let f: Vec<BigInt> = [0i64, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        let err = hensel_lift_root(&f, &BigInt::from(5), &BigInt::zero(), 3);
        assert!(err.is_err());
    }

    #[test]
    fn precision_is_pessimistic() {
        let p = BigInt::from(5);
        let a = Padic::from_bigint(&p, &BigInt::from(6), 4);
        let b = Padic::from_bigint(&p, &BigInt::from(1), 4);
        let d = a.sub(&b); // 5: valuation 1, one digit of precision lost
        assert_eq!(d.valuation, 1);
        assert_eq!(d.precision, 3);
        assert!(d.to_residue(5).is_err());
        assert_eq!(d.to_residue(4).unwrap(), BigInt::from(5));
    }
}
