//! LLL lattice basis reduction over the integers, with exact rational
//! Gram-Schmidt and the Lovász parameter fixed at delta = 0.99.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dot_qz(a: &[BigRational], b: &[BigInt]) -> BigRational {
    a.iter()
        .zip(b)
        .map(|(x, y)| x * BigRational::from_integer(y.clone()))
        .sum()
}

fn dot_qq(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// LLL-reduce an integer basis (rows). Errors if the rows are linearly
/// dependent over the rationals.
pub fn lll_reduce(basis: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    let n = basis.len();
    if n == 0 {
        return Ok(vec![]);
    }
    let dim = basis[0].len();
    if basis.iter().any(|r| r.len() != dim) {
        return Err(Error::Algebra("ragged basis".into()));
    }
    let delta = BigRational::new(BigInt::from(99), BigInt::from(100));
    let mut b: Vec<Vec<BigInt>> = basis.to_vec();

    // Exact Gram-Schmidt data for the current basis prefix.
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut mu: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n]; n];
    let mut norms: Vec<BigRational> = Vec::with_capacity(n);

    let gram_schmidt =
        |b: &[Vec<BigInt>],
         star: &mut Vec<Vec<BigRational>>,
         mu: &mut Vec<Vec<BigRational>>,
         norms: &mut Vec<BigRational>|
         -> Result<()> {
            star.clear();
            norms.clear();
            for i in 0..b.len() {
                let mut s: Vec<BigRational> = b[i]
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect();
                for j in 0..i {
                    let m = dot_qz(&star[j], &b[i]) / &norms[j];
                    for (sk, stk) in s.iter_mut().zip(star[j].iter()) {
                        *sk -= &m * stk;
                    }
                    mu[i][j] = m;
                }
                let nrm = dot_qq(&s, &s);
                if nrm.is_zero() {
                    return Err(Error::Algebra("dependent input basis".into()));
                }
                star.push(s);
                norms.push(nrm);
            }
            Ok(())
        };

    gram_schmidt(&b, &mut star, &mut mu, &mut norms)?;

    let mut k = 1usize;
    while k < n {
        // Size reduction of b_k against earlier vectors.
        for j in (0..k).rev() {
            let m = mu[k][j].clone();
            let r = round_rational(&m);
            if !r.is_zero() {
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(bj.iter()) {
                    *x -= &r * y;
                }
                gram_schmidt(&b, &mut star, &mut mu, &mut norms)?;
            }
        }
        // Lovász condition.
        let lhs = &norms[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            gram_schmidt(&b, &mut star, &mut mu, &mut norms)?;
            k = k.max(2) - 1;
        }
    }
    Ok(b)
}

fn round_rational(x: &BigRational) -> BigInt {
    let two = BigInt::from(2);
    let num = x.numer() * &two + x.denom() * BigInt::from(if x.is_negative() { -1 } else { 1 });
    num / (x.denom() * two)
}

/// Squared Euclidean norm of an integer vector.
pub fn norm2(v: &[BigInt]) -> BigInt {
    dot(v, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecs(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn identity_unchanged() {
        let b = vecs(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let r = lll_reduce(&b).unwrap();
        assert_eq!(r, b);
    }

    #[test]
    fn orthogonal_unchanged_up_to_sign() {
        let b = vecs(&[&[0, 3], &[2, 0]]);
        let r = lll_reduce(&b).unwrap();
        let mut norms: Vec<BigInt> = r.iter().map(|v| norm2(v)).collect();
        norms.sort();
        assert_eq!(norms, vec![BigInt::from(4), BigInt::from(9)]);
    }

    #[test]
    fn rank2_short_vector() {
        // Oracle: exhaustive short-vector search in the lattice spanned by
        // (1,0) and (10,1): vectors a*(1,0)+b*(10,1) with small a, b.
        let b = vecs(&[&[1, 0], &[10, 1]]);
        let mut best = BigInt::from(i64::MAX);
        for a in -25i64..=25 {
            for c in -2i64..=2 {
                if a == 0 && c == 0 {
                    continue;
                }
                let v = vec![BigInt::from(a + 10 * c), BigInt::from(c)];
                best = best.min(norm2(&v));
            }
        }
        assert_eq!(best, BigInt::one());
        let r = lll_reduce(&b).unwrap();
        assert_eq!(norm2(&r[0]), best);
        // second vector has sup-norm <= 1 paired with (±1, 0)
        assert!(r[1].iter().all(|x| x.abs() <= BigInt::one()));
    }

    #[test]
    fn dependent_basis_rejected() {
        let b = vecs(&[&[1, 2], &[2, 4]]);
        assert!(lll_reduce(&b).is_err());
    }

    #[test]
    fn preserves_span() {
        use crate::algebra::hnf::hnf;
        let b = vecs(&[&[4, 1, 7], &[2, 9, 3], &[8, 8, 8]]);
        let r = lll_reduce(&b).unwrap();
        assert_eq!(hnf(&b), hnf(&r));
    }
}
