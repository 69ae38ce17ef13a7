//! Hermite normal form over the integers, with transformation matrices.
//!
//! Used for exact lattice membership (certified integer solving of x*M = w),
//! integer kernels, and span-equality checks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Row-style HNF of the row span of `m`: returns the canonical full-row-rank
/// echelon basis (pivots positive, entries above pivots reduced), zero rows
/// dropped.
pub fn hnf(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    hnf_with_transform(m).0
}

/// HNF together with a unimodular transform U such that U * m = [H; 0].
/// Returns (H without zero rows, U full square).
pub fn hnf_with_transform(m: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let rows = m.len();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut h: Vec<Vec<BigInt>> = m.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            (0..rows)
                .map(|j| {
                    if i == j {
                        BigInt::from(1)
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();

    let mut pivot_row = 0usize;
    for col in 0..cols {
        // Find a row at or below pivot_row with nonzero entry in this column,
        // and use gcd steps to clear all others.
        loop {
            let mut nonzero: Vec<usize> = (pivot_row..rows)
                .filter(|&r| !h[r][col].is_zero())
                .collect();
            if nonzero.is_empty() {
                break;
            }
            if nonzero.len() == 1 {
                let r = nonzero[0];
                h.swap(pivot_row, r);
                u.swap(pivot_row, r);
                break;
            }
            // Pick the row with smallest |entry| and reduce the others by it.
            nonzero.sort_by_key(|&r| h[r][col].abs());
            let base = nonzero[0];
            for &r in &nonzero[1..] {
                let q = div_round(&h[r][col], &h[base][col]);
                if !q.is_zero() {
                    for c in 0..cols {
                        let t = &q * &h[base][c];
                        h[r][c] -= t;
                    }
                    for c in 0..rows {
                        let t = &q * &u[base][c];
                        u[r][c] -= t;
                    }
                }
            }
        }
        if pivot_row >= rows || h[pivot_row][col].is_zero() {
            continue;
        }
        // Make pivot positive.
        if h[pivot_row][col].is_negative() {
            for c in 0..cols {
                h[pivot_row][c] = -h[pivot_row][c].clone();
            }
            for c in 0..rows {
                u[pivot_row][c] = -u[pivot_row][c].clone();
            }
        }
        // Reduce entries above the pivot.
        for r in 0..pivot_row {
            let q = h[r][col].div_floor(&h[pivot_row][col]);
            if !q.is_zero() {
                for c in 0..cols {
                    let t = &q * &h[pivot_row][c];
                    h[r][c] -= t;
                }
                for c in 0..rows {
                    let t = &q * &u[pivot_row][c];
                    u[r][c] -= t;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    h.truncate(pivot_row);
    (h, u)
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // Quotient minimizing |a - q b|.
    let (q, r) = a.div_mod_floor(b);
    if &r * 2 > b.abs() {
        q + 1
    } else {
        q
    }
}

/// Solve x * m = w over the integers. Returns None when w is outside the
/// row lattice of m (no integer solution).
pub fn solve_left(m: &[Vec<BigInt>], w: &[BigInt]) -> Option<Vec<BigInt>> {
    let (h, u) = hnf_with_transform(m);
    let cols = w.len();
    let mut y = vec![BigInt::zero(); m.len()];
    let mut rem: Vec<BigInt> = w.to_vec();
    let mut row = 0usize;
    for col in 0..cols {
        if row < h.len() && !h[row][col].is_zero() {
            let (q, r) = rem[col].div_mod_floor(&h[row][col]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for c in 0..cols {
                    let t = &q * &h[row][c];
                    rem[c] -= t;
                }
            }
            y[row] = q;
            row += 1;
        } else if !rem[col].is_zero() {
            return None;
        }
    }
    if rem.iter().any(|x| !x.is_zero()) {
        return None;
    }
    // x = y * U restricted to the H rows.
    let rows = m.len();
    let mut x = vec![BigInt::zero(); rows];
    for i in 0..h.len() {
        if y[i].is_zero() {
            continue;
        }
        for j in 0..rows {
            x[j] += &y[i] * &u[i][j];
        }
    }
    Some(x)
}

/// Basis of the left kernel {x : x * m = 0}.
pub fn left_kernel(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let (h, u) = hnf_with_transform(m);
    u[h.len()..].to_vec()
}

/// Rank of the row span.
pub fn rank(m: &[Vec<BigInt>]) -> usize {
    hnf(m).len()
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
    fn hnf_canonical() {
        let a = vecs(&[&[2, 3, 6, 2], &[5, 6, 1, 6], &[8, 3, 1, 1]]);
        let h = hnf(&a);
        // pivots positive, echelon shape
        assert_eq!(h.len(), 3);
        assert!(h[0][0] > BigInt::zero());
        // span preserved: every original row solvable in H
        for row in &a {
            assert!(solve_left(&h, row).is_some());
        }
    }

    #[test]
    fn solve_and_kernel() {
        let m = vecs(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        // w = row0 + 2*row1
        let w: Vec<BigInt> = vec![9.into(), 12.into(), 15.into()];
        let x = solve_left(&m, &w).unwrap();
        let mut check = vec![BigInt::zero(); 3];
        for (i, xi) in x.iter().enumerate() {
            for j in 0..3 {
                check[j] += xi * &m[i][j];
            }
        }
        assert_eq!(check, w);
        let k = left_kernel(&m);
        assert_eq!(k.len(), 1); // rank 2 matrix
        let mut kv = vec![BigInt::zero(); 3];
        for (i, xi) in k[0].iter().enumerate() {
            for j in 0..3 {
                kv[j] += xi * &m[i][j];
            }
        }
        assert!(kv.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn outside_lattice_rejected() {
        let m = vecs(&[&[2, 0], &[0, 2]]);
        assert!(solve_left(&m, &[BigInt::from(1), BigInt::from(0)]).is_none());
        assert!(solve_left(&m, &[BigInt::from(2), BigInt::from(4)]).is_some());
    }
}
