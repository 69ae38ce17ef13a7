//! Dense univariate polynomials over a generic ring or field context.
//!
//! A polynomial is a `Vec` of coefficients in ascending degree order with no
//! trailing zeros (the zero polynomial is the empty vector). All functions
//! take the coefficient ring as an explicit context argument.

use super::ring::{Field, Ring};

pub type Poly<R> = Vec<R>;

/// Remove trailing zeros in place.
pub fn trim<R: Ring>(ring: &R, f: &mut Poly<R::El>) {
    while let Some(c) = f.last() {
        if ring.is_zero(c) {
            f.pop();
        } else {
            break;
        }
    }
}

pub fn deg<T>(f: &[T]) -> isize {
    f.len() as isize - 1
}

pub fn is_zero<T>(f: &[T]) -> bool {
    f.is_empty()
}

pub fn constant<R: Ring>(ring: &R, c: R::El) -> Poly<R::El> {
    if ring.is_zero(&c) {
        vec![]
    } else {
        vec![c]
    }
}

/// The monomial c * x^k.
pub fn monomial<R: Ring>(ring: &R, c: R::El, k: usize) -> Poly<R::El> {
    if ring.is_zero(&c) {
        return vec![];
    }
    let mut f = vec![ring.zero(); k + 1];
    f[k] = c;
    f
}

pub fn x<R: Ring>(ring: &R) -> Poly<R::El> {
    vec![ring.zero(), ring.one()]
}

pub fn add<R: Ring>(ring: &R, a: &[R::El], b: &[R::El]) -> Poly<R::El> {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    for i in 0..a.len().max(b.len()) {
        let x = match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => ring.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        };
        out.push(x);
    }
    trim(ring, &mut out);
    out
}

pub fn sub<R: Ring>(ring: &R, a: &[R::El], b: &[R::El]) -> Poly<R::El> {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    for i in 0..a.len().max(b.len()) {
        let x = match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => ring.sub(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => ring.neg(y),
            (None, None) => unreachable!(),
        };
        out.push(x);
    }
    trim(ring, &mut out);
    out
}

pub fn neg<R: Ring>(ring: &R, a: &[R::El]) -> Poly<R::El> {
    a.iter().map(|c| ring.neg(c)).collect()
}

pub fn scale<R: Ring>(ring: &R, a: &[R::El], c: &R::El) -> Poly<R::El> {
    if ring.is_zero(c) {
        return vec![];
    }
    let mut out: Poly<R::El> = a.iter().map(|x| ring.mul(x, c)).collect();
    trim(ring, &mut out);
    out
}

pub fn mul<R: Ring>(ring: &R, a: &[R::El], b: &[R::El]) -> Poly<R::El> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![ring.zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ring.is_zero(ai) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] = ring.mul_add(ai, bj, &out[i + j]);
        }
    }
    trim(ring, &mut out);
    out
}

/// Multiply by x^k.
pub fn shift<R: Ring>(ring: &R, a: &[R::El], k: usize) -> Poly<R::El> {
    if a.is_empty() {
        return vec![];
    }
    let mut out = vec![ring.zero(); k];
    out.extend_from_slice(a);
    out
}

pub fn eval<R: Ring>(ring: &R, f: &[R::El], x: &R::El) -> R::El {
    let mut acc = ring.zero();
    for c in f.iter().rev() {
        acc = ring.mul_add(&acc, x, c);
    }
    acc
}

pub fn deriv<R: Ring>(ring: &R, f: &[R::El]) -> Poly<R::El> {
    if f.len() <= 1 {
        return vec![];
    }
    let mut out = Vec::with_capacity(f.len() - 1);
    for (i, c) in f.iter().enumerate().skip(1) {
        out.push(ring.mul_i64(c, i as i64));
    }
    trim(ring, &mut out);
    out
}

/// Euclidean division over a field: returns (quotient, remainder).
pub fn divrem<F: Field>(field: &F, a: &[F::El], b: &[F::El]) -> (Poly<F::El>, Poly<F::El>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.len() < b.len() {
        return (vec![], a.to_vec());
    }
    let lead_inv = field.inv(b.last().unwrap());
    let mut rem = a.to_vec();
    let mut quo = vec![field.zero(); a.len() - b.len() + 1];
    for i in (0..quo.len()).rev() {
        let top = rem[i + b.len() - 1].clone();
        if field.is_zero(&top) {
            continue;
        }
        let q = field.mul(&top, &lead_inv);
        for (j, bj) in b.iter().enumerate() {
            let t = field.mul(&q, bj);
            rem[i + j] = field.sub(&rem[i + j], &t);
        }
        quo[i] = q;
    }
    trim(field, &mut rem);
    trim(field, &mut quo);
    (quo, rem)
}

pub fn rem<F: Field>(field: &F, a: &[F::El], b: &[F::El]) -> Poly<F::El> {
    divrem(field, a, b).1
}

/// Monic gcd over a field.
pub fn gcd<F: Field>(field: &F, a: &[F::El], b: &[F::El]) -> Poly<F::El> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let r = rem(field, &a, &b);
        a = b;
        b = r;
    }
    monic(field, &a)
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
pub fn xgcd<F: Field>(
    field: &F,
    a: &[F::El],
    b: &[F::El],
) -> (Poly<F::El>, Poly<F::El>, Poly<F::El>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    let mut s0 = vec![field.one()];
    let mut s1: Poly<F::El> = vec![];
    let mut t0: Poly<F::El> = vec![];
    let mut t1 = vec![field.one()];
    while !r1.is_empty() {
        let (q, r) = divrem(field, &r0, &r1);
        let ns = sub(field, &s0, &mul(field, &q, &s1));
        let nt = sub(field, &t0, &mul(field, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, ns);
        t0 = std::mem::replace(&mut t1, nt);
    }
    if r0.is_empty() {
        return (r0, s0, t0);
    }
    let c = field.inv(r0.last().unwrap());
    (
        scale(field, &r0, &c),
        scale(field, &s0, &c),
        scale(field, &t0, &c),
    )
}

pub fn monic<F: Field>(field: &F, a: &[F::El]) -> Poly<F::El> {
    match a.last() {
        None => vec![],
        Some(l) if field.is_one(l) => a.to_vec(),
        Some(l) => scale(field, a, &field.inv(l)),
    }
}

/// a * b mod m.
pub fn mulmod<F: Field>(field: &F, a: &[F::El], b: &[F::El], m: &[F::El]) -> Poly<F::El> {
    rem(field, &mul(field, a, b), m)
}

/// a^e mod m with a u64 exponent.
pub fn powmod_u64<F: Field>(field: &F, a: &[F::El], mut e: u64, m: &[F::El]) -> Poly<F::El> {
    let mut base = rem(field, a, m);
    let mut acc = vec![field.one()];
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(field, &acc, &base, m);
        }
        base = mulmod(field, &base, &base, m);
        e >>= 1;
    }
    acc
}

/// a^e mod m with an arbitrary-precision exponent given as big-endian bits.
pub fn powmod_bits<F: Field>(
    field: &F,
    a: &[F::El],
    bits: impl Iterator<Item = bool>,
    m: &[F::El],
) -> Poly<F::El> {
    let mut acc = vec![field.one()];
    let a = rem(field, a, m);
    for bit in bits {
        acc = mulmod(field, &acc, &acc, m);
        if bit {
            acc = mulmod(field, &acc, &a, m);
        }
    }
    acc
}

/// Compose: f(g(x)).
pub fn compose<R: Ring>(ring: &R, f: &[R::El], g: &[R::El]) -> Poly<R::El> {
    let mut acc: Poly<R::El> = vec![];
    for c in f.iter().rev() {
        acc = mul(ring, &acc, g);
        acc = add(ring, &acc, &constant(ring, c.clone()));
    }
    acc
}

/// Exact division in R[x] for a ring where the divisor is monic (or lead-unit-free).
/// Panics if the division is not exact.
pub fn div_exact_monic<R: Ring>(ring: &R, a: &[R::El], b: &[R::El]) -> Poly<R::El> {
    assert!(!b.is_empty());
    assert!(ring.is_one(b.last().unwrap()), "divisor must be monic");
    if a.is_empty() {
        return vec![];
    }
    assert!(a.len() >= b.len(), "division not exact");
    let mut rem = a.to_vec();
    let mut quo = vec![ring.zero(); a.len() - b.len() + 1];
    for i in (0..quo.len()).rev() {
        let q = rem[i + b.len() - 1].clone();
        if ring.is_zero(&q) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let t = ring.mul(&q, bj);
            rem[i + j] = ring.sub(&rem[i + j], &t);
        }
        quo[i] = q;
    }
    trim(ring, &mut rem);
    assert!(rem.is_empty(), "division not exact");
    trim(ring, &mut quo);
    quo
}

/// Lagrange interpolation through (xs[i], ys[i]) over a field.
pub fn interpolate<F: Field>(field: &F, xs: &[F::El], ys: &[F::El]) -> Poly<F::El> {
    assert_eq!(xs.len(), ys.len());
    // Newton form for O(n^2) work.
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = field.sub(&coef[i], &coef[i - 1]);
            let den = field.sub(&xs[i], &xs[i - j]);
            coef[i] = field.div(&num, &den);
        }
    }
    let mut out: Poly<F::El> = vec![];
    for i in (0..n).rev() {
        // out = out * (x - xs[i]) + coef[i]
        let lin = vec![field.neg(&xs[i]), field.one()];
        out = mul(field, &out, &lin);
        out = add(field, &out, &constant(field, coef[i].clone()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fp::Fp;

    #[test]
    fn divrem_gcd() {
        let f = Fp::new(101).unwrap();
        let a: Vec<u64> = [2i64, 0, 1].iter().map(|&c| f.from_i64(c)).collect(); // x^2+2
        let b: Vec<u64> = [3i64, 1].iter().map(|&c| f.from_i64(c)).collect(); // x+3
        let (q, r) = divrem(&f, &a, &b);
        let back = add(&f, &mul(&f, &q, &b), &r);
        assert_eq!(back, a);
        let g = gcd(&f, &a, &b);
        assert_eq!(deg(&g), 0);
    }

    #[test]
    fn interpolation_roundtrip() {
        let f = Fp::new(97).unwrap();
        let poly: Vec<u64> = [5i64, -3, 0, 7].iter().map(|&c| f.from_i64(c)).collect();
        let xs: Vec<u64> = (0..4).map(|i| f.from_i64(i)).collect();
        let ys: Vec<u64> = xs.iter().map(|x| eval(&f, &poly, x)).collect();
        assert_eq!(interpolate(&f, &xs, &ys), poly);
    }

    #[test]
    fn xgcd_identity() {
        let f = Fp::new(101).unwrap();
        let a: Vec<u64> = [1i64, 2, 1].iter().map(|&c| f.from_i64(c)).collect();
        let b: Vec<u64> = [1i64, 1].iter().map(|&c| f.from_i64(c)).collect();
        let (g, s, t) = xgcd(&f, &a, &b);
        let lhs = add(&f, &mul(&f, &s, &a), &mul(&f, &t, &b));
        assert_eq!(lhs, g);
    }
}
