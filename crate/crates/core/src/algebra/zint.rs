//! Big-integer number theory: primality, trial division + Pollard rho
//! factorization, CRT, and rational reconstruction.

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Miller-Rabin with the first 13 prime bases. Deterministic for
/// n < 3.317e24, which covers every integer this crate ever tests for
/// primality (the Lehmer sieve stops near 8.2e23); above that it is a strong
/// probable-prime test.
pub fn is_prime(n: &BigUint) -> bool {
    if n < &BigUint::from(2u8) {
        return false;
    }
    let small: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    for &q in &small {
        let q = BigUint::from(q);
        if *n == q {
            return true;
        }
        if (n % &q).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap();
    let d = &nm1 >> s;
    'wit: for &a in &small {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'wit;
            }
        }
        return false;
    }
    true
}

pub fn is_prime_bigint(n: &BigInt) -> bool {
    match n.sign() {
        Sign::Plus => is_prime(n.magnitude()),
        _ => false,
    }
}

/// Factor a positive integer by trial division then Pollard rho.
/// Returns (prime, exponent) pairs sorted by prime.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out: Vec<(BigUint, u32)> = vec![];
    let mut n = n.clone();
    if n <= BigUint::one() {
        return out;
    }
    for q in 2u64..20_000 {
        let q = BigUint::from(q);
        if &q * &q > n {
            break;
        }
        let mut e = 0;
        while (&n % &q).is_zero() {
            n = &n / &q;
            e += 1;
        }
        if e > 0 {
            out.push((q, e));
        }
    }
    let mut stack = vec![n];
    let mut found: Vec<BigUint> = vec![];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            found.push(m);
            continue;
        }
        let d = pollard_rho(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    found.sort();
    for p in found {
        match out.iter_mut().find(|(q, _)| *q == p) {
            Some((_, e)) => *e += 1,
            None => out.push((p, 1)),
        }
    }
    out.sort();
    out
}

fn pollard_rho(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    if (n % 2u8).is_zero() {
        return BigUint::from(2u8);
    }
    let mut c = BigUint::one();
    loop {
        let mut x = BigUint::from(2u8);
        let mut y = BigUint::from(2u8);
        let mut d = BigUint::one();
        let f = |v: &BigUint| (v * v + &c) % n;
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if !d.is_one() && d != *n {
            return d;
        }
        c += &one;
    }
}

/// Combine congruences x = r_i mod m_i (pairwise coprime, and per the spec,
/// distinct prime moduli rejected on repetition). Returns (x mod M, M).
pub fn crt_combine(residues: &[(BigInt, BigInt)]) -> Result<(BigInt, BigInt)> {
    for (i, (_, p)) in residues.iter().enumerate() {
        for (_, q) in residues.iter().skip(i + 1) {
            if p == q {
                return Err(Error::Algebra(format!("duplicate modulus {p}")));
            }
            if !p.gcd(q).is_one() {
                return Err(Error::Algebra("moduli not coprime".into()));
            }
        }
    }
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (r, p) in residues {
        // solve x' = x mod m, x' = r mod p
        let inv = mod_inverse(&m, p)
            .ok_or_else(|| Error::Algebra("CRT modulus inversion failed".into()))?;
        let t = ((r - &x) * inv).mod_floor(p);
        x += &m * t;
        m *= p;
        x = x.mod_floor(&m);
    }
    Ok((x, m))
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Rational reconstruction: the unique a/b with |a|, b <= sqrt(m/2),
/// gcd(b, m) = 1 and a = b*x mod m, when it exists.
pub fn rational_reconstruct(x: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m / 2i32).sqrt();
    let mut r0 = m.clone();
    let mut r1 = x.mod_floor(m);
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::one();
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let (num, den) = if t1.is_negative() {
        (-r1, -t1)
    } else {
        (r1, t1)
    };
    if den.is_zero() || den > bound || !num.gcd(&den).is_one() || !den.gcd(m).is_one() {
        return None;
    }
    Some((num, den))
}

/// The spec-level operation: reconstruct a rational from residues mod distinct
/// primes. `None` signals that more primes are needed.
pub fn crt_reconstruct_rational(residues: &[(BigInt, BigInt)]) -> Result<Option<(BigInt, BigInt)>> {
    let (x, m) = crt_combine(residues)?;
    Ok(rational_reconstruct(&x, &m))
}

/// Legendre symbol (a/p) for odd prime p: 0, 1 or -1.
pub fn legendre(a: &BigInt, p: &BigInt) -> i32 {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return 0;
    }
    let e: BigInt = (p - 1) / 2;
    let r = a.modpow(&e, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// Integer square root of a perfect square; None otherwise.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    super::ring::perfect_sqrt(n)
}

pub fn to_u64(n: &BigInt) -> Option<u64> {
    n.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstruct_one_half() {
        // residues of 1/2 mod {5,7,11} are 3, 4, 6; oracle: 2*r = 1 mod p.
        let residues: Vec<(BigInt, BigInt)> = [(3i64, 5i64), (4, 7), (6, 11)]
            .iter()
            .map(|&(r, p)| (BigInt::from(r), BigInt::from(p)))
            .collect();
        for (r, p) in &residues {
            assert_eq!((r * BigInt::from(2)).mod_floor(p), BigInt::one());
        }
        let (num, den) = crt_reconstruct_rational(&residues).unwrap().unwrap();
        assert_eq!((num, den), (BigInt::one(), BigInt::from(2)));
    }

    #[test]
    fn reconstruct_zero() {
        let residues = vec![(BigInt::zero(), BigInt::from(5))];
        let (num, den) = crt_reconstruct_rational(&residues).unwrap().unwrap();
        assert!(num.is_zero() && den.is_one());
    }

    #[test]
    fn insufficient_moduli_fails() {
        // 1/3 mod 5 is 2, but with a single prime the bound sqrt(5/2) only
        // admits 0 and ±1, so reconstruction must signal failure.
        let residues = vec![(BigInt::from(2), BigInt::from(5))];
        assert!(crt_reconstruct_rational(&residues).unwrap().is_none());
    }

    #[test]
    fn duplicate_primes_rejected() {
        let residues = vec![
            (BigInt::from(1), BigInt::from(5)),
            (BigInt::from(2), BigInt::from(5)),
        ];
        assert!(crt_reconstruct_rational(&residues).is_err());
    }

    #[test]
    fn roundtrip_random_rationals() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let primes: Vec<u64> = (0..12)
            .scan(1_000_000u64, |st, _| {
                *st = crate::algebra::fp::next_prime_u64(*st + 1);
                Some(*st)
            })
            .collect();
        for _ in 0..50 {
            let num = BigInt::from(rng.gen_range(-1_000_000i64..1_000_000));
            let den = BigInt::from(rng.gen_range(1i64..1_000_000));
            let g = num.gcd(&den);
            let (num, den) = (num / &g, den / g);
            let residues: Vec<(BigInt, BigInt)> = primes
                .iter()
                .map(|&p| {
                    let p = BigInt::from(p);
                    let inv = mod_inverse(&den, &p).unwrap();
                    ((&num * inv).mod_floor(&p), p)
                })
                .collect();
            let (n2, d2) = crt_reconstruct_rational(&residues).unwrap().unwrap();
            assert_eq!((n2, d2), (num, den));
        }
    }

    #[test]
    fn factorize_group_order() {
        // |A_2(F_{p^2})| from the worked 29-level example.
        let n: BigUint = "16".parse::<BigUint>().unwrap()
            * BigUint::from(729u32)
            * BigUint::from(25u32)
            * BigUint::from(49u32)
            * BigUint::from(707281u32)
            * BigUint::from(11449u32);
        let f = factorize(&n);
        let expect: Vec<(BigUint, u32)> = [(2u32, 4u32), (3, 6), (5, 2), (7, 2), (29, 4), (107, 2)]
            .iter()
            .map(|&(p, e)| (BigUint::from(p), e))
            .collect();
        assert_eq!(f, expect);
    }

    #[test]
    fn primality_large() {
        let p: BigUint = "816212624008487344127999".parse().unwrap();
        assert!(is_prime(&p));
        let q: BigUint = "816212624008487344127997".parse().unwrap();
        assert!(!is_prime(&q));
    }
}
