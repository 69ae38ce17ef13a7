//! The modular-unit divisor formalism: cusp-orbit divisor data for X_1(N),
//! the diamond-operator action, the unit-group embedding and its inverse,
//! H-invariant sublattices, unit degrees, and LLL selection of a low-degree
//! generating pair.
//!
//! Divisor data is ingested from JSON packs (or regenerated from Tate-curve
//! expansions, see [`divgen`]); ingestion validates the degree pairing and
//! the lattice rank before anything downstream may use the data.

pub mod divgen;

use crate::algebra::{hnf, lll};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// The integer matrix of modular-unit divisors at the cusp orbits of X_1(N):
/// rows k = 2..n+1 give div(f_k) = sum_i a_{k,i} C_i, n = floor(N/2).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CuspBasisData {
    #[serde(rename = "N")]
    pub level: u32,
    pub cusp_degrees: Vec<u64>,
    pub rows: Vec<Vec<i64>>,
    /// Orbit-index convention marker (the representative of {i, N-i} in 0..n).
    #[serde(default = "default_indexing")]
    pub indexing: String,
}

fn default_indexing() -> String {
    "plus-minus-folded".into()
}

impl CuspBasisData {
    pub fn n(&self) -> usize {
        (self.level / 2) as usize
    }

    pub fn load(path: &std::path::Path) -> Result<CuspBasisData> {
        let text = std::fs::read_to_string(path)?;
        let data: CuspBasisData = serde_json::from_str(&text)?;
        data.validate()?;
        Ok(data)
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string(self)?)?;
        Ok(())
    }

    /// Ingestion-time validation: shapes, the degree-0 pairing of every row,
    /// full rank, and diamond-stability of the lattice.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if self.cusp_degrees.len() != n + 1 {
            return Err(Error::Validation(format!(
                "expected {} cusp degrees, found {}",
                n + 1,
                self.cusp_degrees.len()
            )));
        }
        if self.rows.len() != n {
            return Err(Error::Validation(format!(
                "expected {} rows, found {}",
                n,
                self.rows.len()
            )));
        }
        for (k, row) in self.rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(Error::Validation(format!("row {} has wrong length", k + 2)));
            }
            let s: i64 = row
                .iter()
                .zip(&self.cusp_degrees)
                .map(|(a, d)| a * *d as i64)
                .sum();
            if s != 0 {
                return Err(Error::Validation(format!(
                    "row {} fails the degree-0 pairing (sum {})",
                    k + 2,
                    s
                )));
            }
        }
        let m = self.matrix_bigint();
        if hnf::rank(&m) != n {
            return Err(Error::Validation("divisor matrix is rank-deficient".into()));
        }
        // diamond images of rows stay in the lattice
        for d in 2..self.level {
            if num_integer::gcd(d, self.level) != 1 {
                continue;
            }
            for row in &self.rows {
                let im = diamond_on_divisor(self.level, d as u64, row)?;
                if phi_inverse(self, &im).is_err() {
                    return Err(Error::Validation(format!(
                        "diamond <{d}> image of a generator leaves the lattice"
                    )));
                }
            }
        }
        Ok(())
    }

    fn matrix_bigint(&self) -> Vec<Vec<BigInt>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }
}

/// Fold a residue to its orbit representative in 0..=n.
fn fold(level: u32, i: u64) -> usize {
    let i = (i % level as u64) as u32;
    (i.min(level - i)) as usize
}

/// The diamond operator <d> on a divisor vector: permutes coordinates by
/// C_i -> C_j with j = +- d i mod N.
pub fn diamond_on_divisor(level: u32, d: u64, v: &[i64]) -> Result<Vec<i64>> {
    if num_integer::gcd(d % level as u64, level as u64) != 1 {
        return Err(Error::Units(format!("{d} is not invertible mod {level}")));
    }
    let n = (level / 2) as usize;
    if v.len() != n + 1 {
        return Err(Error::Units("divisor vector has wrong length".into()));
    }
    let mut out = vec![0i64; n + 1];
    for (i, &c) in v.iter().enumerate() {
        let j = fold(level, d * i as u64);
        out[j] += c;
    }
    Ok(out)
}

/// phi^{-1}: the unique integer exponent vector e (over f_2..f_{n+1}) with
/// e * M = w; errors when w is not a modular-unit divisor.
pub fn phi_inverse(data: &CuspBasisData, w: &[i64]) -> Result<Vec<i64>> {
    let m = data.matrix_bigint();
    let wb: Vec<BigInt> = w.iter().map(|&x| BigInt::from(x)).collect();
    let x = hnf::solve_left(&m, &wb)
        .ok_or_else(|| Error::Units("not a modular-unit divisor".into()))?;
    Ok(x.iter().map(|v| v.to_i64().expect("exponent overflow")).collect())
}

/// The H-invariant sublattice of the unit divisor lattice, with its
/// exponent-vector preimages. H is given by generators mod N.
#[derive(Clone, Debug)]
pub struct InvariantLattice {
    pub level: u32,
    /// The subgroup H (with -1 adjoined), as sorted residues.
    pub subgroup: Vec<u64>,
    /// Hermite-reduced basis of L_{N,H} (divisor vectors, length n+1).
    pub basis: Vec<Vec<i64>>,
    /// Exponent-vector preimages of the basis.
    pub exponents: Vec<Vec<i64>>,
}

impl InvariantLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
    /// h = |H / {+-1}|.
    pub fn h(&self) -> u64 {
        (self.subgroup.len() / 2) as u64
    }
}

/// Close a generating set to the full subgroup with -1 adjoined.
pub fn subgroup_elements(level: u32, gens: &[u64]) -> Vec<u64> {
    let n = level as u64;
    let mut h: Vec<u64> = vec![1, n - 1];
    loop {
        let mut new = vec![];
        for &x in &h {
            for &g in gens {
                let y = x * (g % n) % n;
                if y != 0 && !h.contains(&y) && !new.contains(&y) {
                    new.push(y);
                }
            }
        }
        if new.is_empty() {
            break;
        }
        h.extend(new);
    }
    h.sort();
    h
}

/// Compute L_{N,H} = intersection of ker(<d> - 1) over d in H.
pub fn invariant_sublattice(data: &CuspBasisData, h_gens: &[u64]) -> Result<InvariantLattice> {
    let n = data.n();
    let level = data.level;
    let subgroup = subgroup_elements(level, h_gens);
    // stack M (P_d - I) over the generators (plus -1, harmless: acts trivially)
    let mut stacked: Vec<Vec<BigInt>> = vec![vec![]; n];
    for &d in h_gens {
        for (ri, row) in data.rows.iter().enumerate() {
            let im = diamond_on_divisor(level, d, row)?;
            for (a, b) in im.iter().zip(row.iter()) {
                stacked[ri].push(BigInt::from(a - b));
            }
        }
    }
    let kernel = if h_gens.is_empty() {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() })
                    .collect()
            })
            .collect()
    } else {
        hnf::left_kernel(&stacked)
    };
    // map kernel vectors through M to divisor vectors, then Hermite-reduce
    let m = data.matrix_bigint();
    let divs: Vec<Vec<BigInt>> = kernel
        .iter()
        .map(|x| {
            let mut w = vec![BigInt::zero(); n + 1];
            for (i, xi) in x.iter().enumerate() {
                for j in 0..=n {
                    w[j] += xi * &m[i][j];
                }
            }
            w
        })
        .collect();
    let reduced = hnf::hnf(&divs);
    let mut basis = vec![];
    let mut exponents = vec![];
    for w in reduced {
        let wi: Vec<i64> = w.iter().map(|v| v.to_i64().expect("overflow")).collect();
        let e = phi_inverse(data, &wi)?;
        basis.push(wi);
        exponents.push(e);
    }
    Ok(InvariantLattice {
        level,
        subgroup,
        basis,
        exponents,
    })
}

/// Degree of the modular unit with divisor vector v, as a function on X_H:
/// (1/2 sum |v_i| deg C_i) / h. Errors when the result is not integral.
pub fn unit_degree(v: &[i64], data: &CuspBasisData, h: u64) -> Result<i64> {
    let two_deg: i64 = v
        .iter()
        .zip(&data.cusp_degrees)
        .map(|(a, d)| a.abs() * *d as i64)
        .sum();
    if two_deg % (2 * h as i64) != 0 {
        return Err(Error::Units(format!(
            "inconsistent divisor data: degree {}/2 not divisible by h = {}",
            two_deg, h
        )));
    }
    Ok(two_deg / (2 * h as i64))
}

/// A unit presented by its exponent vector over the generators f_2..f_{n+1}
/// together with its divisor vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitVector {
    pub level: u32,
    pub exponents: Vec<i64>,
    pub divisor: Vec<i64>,
}

/// LLL-select two short independent vectors of the degree-weighted lattice
/// L'_{N,H}; returns the units and their X_H-degrees (d1 for X, d2 for Y).
pub fn select_low_degree_pair(
    lat: &InvariantLattice,
    data: &CuspBasisData,
) -> Result<(UnitVector, UnitVector, i64, i64)> {
    if lat.rank() < 2 {
        return Err(Error::Units(
            "no plane model from modular units: rank of the invariant lattice is below 2".into(),
        ));
    }
    let weighted: Vec<Vec<BigInt>> = lat
        .basis
        .iter()
        .map(|v| {
            v.iter()
                .zip(&data.cusp_degrees)
                .map(|(a, d)| BigInt::from(a * *d as i64))
                .collect()
        })
        .collect();
    let reduced = lll::lll_reduce(&weighted)?;
    // sort candidates by (norm, lexicographic exponent vector) for
    // reproducible tie-breaking
    let mut cands: Vec<(BigInt, Vec<i64>, Vec<i64>)> = vec![];
    for w in &reduced {
        let div: Vec<i64> = w
            .iter()
            .zip(&data.cusp_degrees)
            .map(|(a, d)| {
                let v = a / BigInt::from(*d);
                v.to_i64().expect("overflow")
            })
            .collect();
        let e = phi_inverse(data, &div)?;
        cands.push((lll::norm2(w), e, div));
    }
    cands.sort();
    let h = lat.h();
    let first = &cands[0];
    // second: the next candidate independent of the first
    let second = cands[1..]
        .iter()
        .find(|c| {
            // independence over Q: c.2 not proportional to first.2
            let (a, b) = (&first.2, &c.2);
            let mut ratio: Option<(i64, i64)> = None;
            for (x, y) in a.iter().zip(b.iter()) {
                if *x == 0 && *y == 0 {
                    continue;
                }
                if *x == 0 || *y == 0 {
                    return true;
                }
                match ratio {
                    None => ratio = Some((*x, *y)),
                    Some((rx, ry)) => {
                        if rx * *y != ry * *x {
                            return true;
                        }
                    }
                }
            }
            false
        })
        .ok_or_else(|| Error::Units("reduced basis contains no independent pair".into()))?;
    let d1 = unit_degree(&first.2, data, h)?;
    let d2 = unit_degree(&second.2, data, h)?;
    Ok((
        UnitVector {
            level: data.level,
            exponents: first.1.clone(),
            divisor: first.2.clone(),
        },
        UnitVector {
            level: data.level,
            exponents: second.1.clone(),
            divisor: second.2.clone(),
        },
        d1,
        d2,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data11() -> CuspBasisData {
        divgen::generate_divisor_data(11).unwrap()
    }

    #[test]
    fn diamond_rules() {
        let v: Vec<i64> = vec![7, 1, 2, 3, 4, 5];
        // d = 1 and d = N-1 act trivially
        assert_eq!(diamond_on_divisor(11, 1, &v).unwrap(), v);
        assert_eq!(diamond_on_divisor(11, 10, &v).unwrap(), v);
        // N = 29, d = 2: index 1 -> 2, index 14 -> 1 (28 = -1)
        let mut w = vec![0i64; 15];
        w[1] = 1;
        let im = diamond_on_divisor(29, 2, &w).unwrap();
        assert_eq!(im[2], 1);
        let mut w14 = vec![0i64; 15];
        w14[14] = 1;
        let im14 = diamond_on_divisor(29, 2, &w14).unwrap();
        assert_eq!(im14[1], 1);
        // group law <d1><d2> = <d1 d2>
        let d1 = 3u64;
        let d2 = 7u64;
        let a = diamond_on_divisor(29, d1, &diamond_on_divisor(29, d2, &im).unwrap()).unwrap();
        let b = diamond_on_divisor(29, d1 * d2 % 29, &im).unwrap();
        assert_eq!(a, b);
        // non-invertible d rejected
        assert!(diamond_on_divisor(10, 5, &v[0..6]).is_err());
    }

    #[test]
    fn phi_roundtrip() {
        let data = data11();
        // w = row k of M -> unit vector selecting f_k
        for (k, row) in data.rows.iter().enumerate() {
            let e = phi_inverse(&data, row).unwrap();
            let mut expect = vec![0i64; data.n()];
            expect[k] = 1;
            assert_eq!(e, expect);
        }
        // sum of rows 2 and 3 -> (1, 1, 0, ...)
        let sum: Vec<i64> = data.rows[0]
            .iter()
            .zip(&data.rows[1])
            .map(|(a, b)| a + b)
            .collect();
        let e = phi_inverse(&data, &sum).unwrap();
        assert_eq!(e[0], 1);
        assert_eq!(e[1], 1);
        assert!(e[2..].iter().all(|&x| x == 0));
        // a vector with rational-only solution errors
        let mut bad = data.rows[0].clone();
        bad[0] += 1;
        assert!(phi_inverse(&data, &bad).is_err());
    }

    #[test]
    fn invariant_lattice_trivial_and_full() {
        let data = data11();
        // H = {+-1}: everything is invariant, rank n
        let lat = invariant_sublattice(&data, &[]).unwrap();
        assert_eq!(lat.rank(), data.n());
        // H = full group: rank = (#cusp orbits of X_0(11)) - 1 = 1, so the
        // model search must report rank < 2
        let lat_full = invariant_sublattice(&data, &[2]).unwrap();
        assert_eq!(lat_full.rank(), 1);
        assert!(select_low_degree_pair(&lat_full, &data).is_err());
        assert!(lat_full.rank() <= lat.rank());
        // invariance under every element of H
        for v in &lat_full.basis {
            for &d in &lat_full.subgroup {
                assert_eq!(&diamond_on_divisor(11, d, v).unwrap(), v);
            }
        }
    }

    #[test]
    fn degrees_and_selection() {
        let data = data11();
        let lat = invariant_sublattice(&data, &[]).unwrap();
        let (vx, vy, d1, d2) = select_low_degree_pair(&lat, &data).unwrap();
        assert!(d1 >= 1 && d2 >= d1);
        assert_ne!(vx.divisor, vy.divisor);
        // zero vector has degree 0; doubling doubles the degree
        let zero = vec![0i64; data.n() + 1];
        assert_eq!(unit_degree(&zero, &data, 1).unwrap(), 0);
        let doubled: Vec<i64> = vx.divisor.iter().map(|a| 2 * a).collect();
        assert_eq!(
            unit_degree(&doubled, &data, 1).unwrap(),
            2 * unit_degree(&vx.divisor, &data, 1).unwrap()
        );
    }
}
