//! Interpolation of the polynomial relation f_H between two modular units:
//! specialize x = x0, reduce both units in F_p[y]/(f_N(x0, y)), and collect
//! the linear constraints on the coefficients c_{ij} of
//! sum c_{ij} X^i Y^j = 0 until the nullspace is one-dimensional. Per-prime
//! solutions are merged by CRT and rational reconstruction.

use crate::algebra::fp::{next_prime_u64, Fp};
use crate::algebra::ring::{Field, Ring};
use crate::algebra::zpoly::{self, Zx, Zxy};
use crate::algebra::{poly, zint};
use crate::error::{Error, Result};
use crate::tate::fn_poly;
use num_bigint::BigInt;
use num_traits::One;

/// A modular unit as an exponent vector over the generators f_2..f_{n+1}.
#[derive(Clone, Debug)]
pub struct UnitExpr {
    pub level: u32,
    pub exponents: Vec<i64>,
}

impl UnitExpr {
    /// The (numerator, denominator) pair in the (x, y) chart, kept factored.
    fn factored(&self) -> Result<Vec<(Zxy, Zxy, i64)>> {
        let mut out = vec![];
        for (idx, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let k = idx as u32 + 2;
            let f = fn_poly::unit_fraction_xy(k)?;
            out.push((f.num, f.den, e));
        }
        Ok(out)
    }
}

/// Arithmetic in F_p[y]/(m).
struct Quot<'a> {
    fp: &'a Fp,
    m: Vec<u64>,
}

impl<'a> Quot<'a> {
    fn reduce(&self, a: &[u64]) -> Vec<u64> {
        poly::rem(self.fp, a, &self.m)
    }
    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        poly::mulmod(self.fp, a, b, &self.m)
    }
    fn inv(&self, a: &[u64]) -> Option<Vec<u64>> {
        let (g, s, _) = poly::xgcd(self.fp, a, &self.m);
        if poly::deg(&g) != 0 {
            return None;
        }
        Some(self.reduce(&s))
    }
    fn pow(&self, a: &[u64], e: u64) -> Vec<u64> {
        poly::powmod_u64(self.fp, a, e, &self.m)
    }
    fn one(&self) -> Vec<u64> {
        vec![self.fp.one()]
    }
}

/// Evaluate a Z[x,y] polynomial at (x0, class of y) in F_p[y]/(m).
fn eval_in_quot(q: &Quot, f: &Zxy, x0: u64) -> Vec<u64> {
    let fp = q.fp;
    let x = fp.to_el(x0);
    let mut acc: Vec<u64> = vec![];
    for cy in f.iter().rev() {
        // acc = acc * y + c(x0)
        acc = q.mul(&acc, &[0, fp.one()]);
        let c = {
            let mut v = fp.zero();
            for coef in cy.iter().rev() {
                v = fp.mul(&v, &x);
                v = fp.add(&v, &crate::tate::coords::from_bigint(fp, coef));
            }
            v
        };
        if acc.is_empty() {
            acc = vec![c];
        } else {
            acc[0] = fp.add(&acc[0], &c);
        }
        poly::trim(fp, &mut acc);
    }
    q.reduce(&acc)
}

/// Evaluate a factored unit in the quotient ring; None when a factor is not
/// invertible (the specialization hits a cusp).
fn eval_unit(q: &Quot, unit: &[(Zxy, Zxy, i64)], x0: u64) -> Option<Vec<u64>> {
    let mut acc = q.one();
    for (num, den, e) in unit {
        let (fwd, bwd) = if *e >= 0 { (num, den) } else { (den, num) };
        let fv = eval_in_quot(q, fwd, x0);
        let bv = eval_in_quot(q, bwd, x0);
        let bi = q.inv(&bv)?;
        // also the forward part must stay invertible for negative powers of
        // the full unit later; units never vanish identically off cusps
        let base = q.mul(&fv, &bi);
        if base.is_empty() {
            return None;
        }
        let powed = q.pow(&base, e.unsigned_abs());
        acc = q.mul(&acc, &powed);
    }
    Some(acc)
}

/// Incremental F_p nullspace tracker: rows are added and reduced against the
/// current echelon; the corank over the unknown count is monitored.
struct Echelon<'a> {
    fp: &'a Fp,
    ncols: usize,
    /// reduced rows with their pivot columns
    rows: Vec<(usize, Vec<u64>)>,
}

impl<'a> Echelon<'a> {
    fn new(fp: &'a Fp, ncols: usize) -> Self {
        Echelon {
            fp,
            ncols,
            rows: vec![],
        }
    }
    fn add_row(&mut self, mut row: Vec<u64>) {
        let fp = self.fp;
        row.resize(self.ncols, 0);
        for (piv, r) in &self.rows {
            if row[*piv] != 0 {
                let c = row[*piv];
                for (x, y) in row.iter_mut().zip(r.iter()) {
                    let t = fp.mul(&c, y);
                    *x = fp.sub(x, &t);
                }
            }
        }
        if let Some(piv) = row.iter().position(|&x| x != 0) {
            let ci = fp.inv(&row[piv]);
            for x in row.iter_mut() {
                *x = fp.mul(x, &ci);
            }
            // back-substitute into existing rows
            for (_, r) in self.rows.iter_mut() {
                if r[piv] != 0 {
                    let c = r[piv];
                    for (x, y) in r.iter_mut().zip(row.iter()) {
                        let t = fp.mul(&c, y);
                        *x = fp.sub(x, &t);
                    }
                }
            }
            self.rows.push((piv, row));
            self.rows.sort_by_key(|(p, _)| *p);
        }
    }
    fn rank(&self) -> usize {
        self.rows.len()
    }
    /// When corank is 1, the unique nullspace vector normalized to leading
    /// coefficient 1 (in column order).
    fn nullvector(&self) -> Option<Vec<u64>> {
        if self.rank() + 1 != self.ncols {
            return None;
        }
        let fp = self.fp;
        let pivots: Vec<usize> = self.rows.iter().map(|(p, _)| *p).collect();
        let free = (0..self.ncols).find(|c| !pivots.contains(c))?;
        let mut v = vec![0u64; self.ncols];
        v[free] = fp.one();
        for (piv, r) in &self.rows {
            // row: x_piv + sum_{c>piv} r_c x_c = 0 => x_piv = -r_free
            v[*piv] = fp.neg(&r[free]);
        }
        // normalize on first nonzero
        let lead = v.iter().position(|&x| x != 0)?;
        let li = fp.inv(&v[lead]);
        Some(v.iter().map(|x| fp.mul(x, &li)).collect())
    }
}

/// One prime's worth of interpolation. Returns the normalized coefficient
/// vector (length (d2+1)(d1+1), ordered by i*(d1+1)+j for X^i Y^j).
fn relation_mod_p(
    fnxy: &Zxy,
    unit_x: &[(Zxy, Zxy, i64)],
    unit_y: &[(Zxy, Zxy, i64)],
    d1: usize,
    d2: usize,
    p: u64,
    x0_cap: u64,
) -> Result<Vec<u64>> {
    let fp = Fp::new(p)?;
    let ncols = (d2 + 1) * (d1 + 1);
    let mut ech = Echelon::new(&fp, ncols);
    let mut x0 = 1u64;
    let deg_y_full = zpoly::zxy_deg_y(fnxy);
    while x0 < x0_cap {
        x0 += 1;
        let mut m: Vec<u64> = fnxy
            .iter()
            .map(|cy| {
                let v = zpoly::zx_eval(cy, &BigInt::from(x0));
                crate::tate::coords::from_bigint(&fp, &v)
            })
            .collect();
        poly::trim(&fp, &mut m);
        if poly::deg(&m) != deg_y_full {
            continue;
        }
        // skip non-squarefree specializations
        let dm = poly::deriv(&fp, &m);
        if poly::deg(&poly::gcd(&fp, &m, &dm)) > 0 {
            continue;
        }
        let m = poly::monic(&fp, &m);
        let q = Quot { fp: &fp, m };
        let (xv, yv) = match (eval_unit(&q, unit_x, x0), eval_unit(&q, unit_y, x0)) {
            (Some(a), Some(b)) => (a, b),
            _ => continue,
        };
        // basis values X^i Y^j and the coefficient-extraction rows
        let mut xpow = vec![q.one()];
        for _ in 0..d2 {
            xpow.push(q.mul(xpow.last().unwrap(), &xv));
        }
        let mut ypow = vec![q.one()];
        for _ in 0..d1 {
            ypow.push(q.mul(ypow.last().unwrap(), &yv));
        }
        let degm = poly::deg(&q.m) as usize;
        // one equation per power-basis coordinate t: sum c_ij [X^i Y^j]_t = 0
        let mut cols: Vec<Vec<u64>> = Vec::with_capacity(ncols);
        for i in 0..=d2 {
            for j in 0..=d1 {
                let prod = q.mul(&xpow[i], &ypow[j]);
                let mut col = prod;
                col.resize(degm, 0);
                cols.push(col);
            }
        }
        for t in 0..degm {
            let row: Vec<u64> = cols.iter().map(|c| c[t]).collect();
            ech.add_row(row);
        }
        if ech.rank() + 1 == ncols {
            if let Some(v) = ech.nullvector() {
                return Ok(v);
            }
        }
        if ech.rank() == ncols {
            return Err(Error::Model(
                "degrees too small or units dependent (empty nullspace)".into(),
            ));
        }
    }
    Err(Error::Model(format!(
        "interpolation exhausted {x0_cap} specialization points (rank {}, need {})",
        ech.rank(),
        ncols - 1
    )))
}

/// Find the relation between two modular units on X_1(N): the primitive
/// integer polynomial f(X, Y) with deg_X = d2, deg_Y = d1, sign-normalized.
pub fn find_relation(
    level: u32,
    unit_x: &UnitExpr,
    unit_y: &UnitExpr,
    d1: usize,
    d2: usize,
) -> Result<Zxy> {
    let fnxy = fn_poly::fn_in_xy(level)?;
    let fx = unit_x.factored()?;
    let fy = unit_y.factored()?;
    let ncols = (d2 + 1) * (d1 + 1);
    let mut p = (1u64 << 59) + 200;
    let mut residues: Vec<(BigInt, BigInt, Vec<u64>)> = vec![]; // (p, p, coeffs)
    let mut stable: Option<Zxy> = None;
    for _ in 0..10 {
        p = next_prime_u64(p + 2);
        let v = relation_mod_p(&fnxy, &fx, &fy, d1, d2, p, 52)?;
        residues.push((BigInt::from(p), BigInt::from(p), v));
        if residues.len() < 2 {
            continue;
        }
        // coefficient-wise rational reconstruction
        let mut coeffs: Vec<(BigInt, BigInt)> = Vec::with_capacity(ncols);
        let mut ok = true;
        for c in 0..ncols {
            let rs: Vec<(BigInt, BigInt)> = residues
                .iter()
                .map(|(pb, _, v)| {
                    let fp = Fp::new(zint::to_u64(pb).unwrap()).unwrap();
                    (BigInt::from(fp.lift(v[c])), pb.clone())
                })
                .collect();
            match zint::crt_reconstruct_rational(&rs)? {
                Some(r) => coeffs.push(r),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let mut denlcm = BigInt::one();
        for (_, d) in &coeffs {
            denlcm = num_integer::lcm(denlcm.clone(), d.clone());
        }
        let mut out: Zxy = vec![vec![]; d1 + 1];
        for i in 0..=d2 {
            for j in 0..=d1 {
                let (num, den) = &coeffs[i * (d1 + 1) + j];
                let v = num * (&denlcm / den);
                if out[j].len() <= i {
                    out[j].resize(i + 1, BigInt::from(0));
                }
                out[j][i] = v;
            }
        }
        for row in out.iter_mut() {
            zpoly::zx_trim(row);
        }
        zpoly::zxy_trim(&mut out);
        let cand = zpoly::zxy_normalize(&out);
        if let Some(prev) = &stable {
            if *prev == cand {
                verify_relation(level, &fnxy, &fx, &fy, &cand)?;
                return Ok(cand);
            }
        }
        stable = Some(cand);
    }
    Err(Error::Model("relation did not stabilize".into()))
}

/// Randomized identity check: the relation vanishes in F_p[y]/(f_N(x0, y))
/// for fresh primes and specialization points.
fn verify_relation(
    _level: u32,
    fnxy: &Zxy,
    fx: &[(Zxy, Zxy, i64)],
    fy: &[(Zxy, Zxy, i64)],
    rel: &Zxy,
) -> Result<()> {
    let mut p = (1u64 << 60) + 500;
    let mut checked = 0;
    for _ in 0..4 {
        p = next_prime_u64(p + 2);
        let fp = Fp::new(p)?;
        let deg_y_full = zpoly::zxy_deg_y(fnxy);
        let mut x0 = 60u64;
        while checked < 24 && x0 < 200 {
            x0 += 1;
            let mut m: Vec<u64> = fnxy
                .iter()
                .map(|cy| {
                    let v = zpoly::zx_eval(cy, &BigInt::from(x0));
                    crate::tate::coords::from_bigint(&fp, &v)
                })
                .collect();
            poly::trim(&fp, &mut m);
            if poly::deg(&m) != deg_y_full {
                continue;
            }
            let m = poly::monic(&fp, &m);
            let q = Quot { fp: &fp, m };
            let (xv, yv) = match (eval_unit(&q, fx, x0), eval_unit(&q, fy, x0)) {
                (Some(a), Some(b)) => (a, b),
                _ => continue,
            };
            // Horner-evaluate rel(X, Y) in the quotient ring
            let mut acc: Vec<u64> = vec![];
            for cy in rel.iter().rev() {
                acc = q.mul(&acc, &yv);
                // coefficient polynomial in X
                let mut cx: Vec<u64> = vec![];
                for coef in cy.iter().rev() {
                    cx = q.mul(&cx, &xv);
                    let cval = crate::tate::coords::from_bigint(&fp, coef);
                    if cx.is_empty() {
                        cx = vec![cval];
                    } else {
                        cx[0] = fp.add(&cx[0], &cval);
                    }
                    poly::trim(&fp, &mut cx);
                }
                acc = poly::add(&fp, &acc, &cx);
                acc = q.reduce(&acc);
            }
            if !acc.is_empty() {
                return Err(Error::Model(
                    "relation fails the functional identity check".into(),
                ));
            }
            checked += 1;
        }
        if checked >= 24 {
            return Ok(());
        }
    }
    Err(Error::Model("could not verify relation at enough points".into()))
}
