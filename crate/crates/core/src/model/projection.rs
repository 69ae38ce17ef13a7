//! Projection polynomials relating a modular unit to a coordinate of the
//! X_1(N) model, and fibers of the quotient map X_1(N) -> X_H(N).
//!
//! P_Xx(T, x) is the squarefree part of Res_y(D(x,y) T - N(x,y), f_N(x,y))
//! where X = N/D; the other three are the symmetric eliminations. Fibers of
//! a point (X0, Y0) specialize these resultants at T = X0, Y0 over the
//! working field and intersect, then every candidate is verified on the full
//! system.

use super::relation::UnitExpr;
use crate::algebra::fp::{next_prime_u64, Fp};
use crate::algebra::fq::{Fq, FqEmbed};
use crate::algebra::ring::{Field, Ring};
use crate::algebra::zpoly::{self, Zxy};
use crate::algebra::{factor, poly, zint};
use crate::error::{Error, Result};
use crate::tate::fn_poly;
use num_bigint::BigInt;

/// Numerator and denominator of a unit in the (x, y) chart, expanded.
pub fn unit_num_den(unit: &UnitExpr) -> Result<(Zxy, Zxy)> {
    let mut num = zpoly::zxy_const(1);
    let mut den = zpoly::zxy_const(1);
    for (idx, &e) in unit.exponents.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let k = idx as u32 + 2;
        let f = fn_poly::unit_fraction_xy(k)?;
        let (fnum, fden) = if e > 0 { (&f.num, &f.den) } else { (&f.den, &f.num) };
        for _ in 0..e.unsigned_abs() {
            num = zpoly::zxy_mul(&num, fnum);
            den = zpoly::zxy_mul(&den, fden);
        }
    }
    Ok((num, den))
}

/// The specialized projection polynomial for a unit at value t0 over F_q:
/// the squarefree part of Res_y(D t0 - N, f_N) (eliminating y; pass
/// `swap = true` to eliminate x instead and obtain a polynomial in y).
pub fn specialized_projection(
    fq: &Fq,
    fnxy: &Zxy,
    num: &Zxy,
    den: &Zxy,
    t0: &Vec<u64>,
    swap: bool,
) -> Result<Vec<Vec<u64>>> {
    let reduce = |f: &Zxy| -> Vec<Vec<Vec<u64>>> {
        let g = if swap { zpoly::zxy_swap_vars(f) } else { f.clone() };
        g.iter()
            .map(|cy| {
                let mut row: Vec<Vec<u64>> = cy
                    .iter()
                    .map(|c| fq.from_base(crate::tate::coords::from_bigint(fq.base(), c)))
                    .collect();
                while row.last().map_or(false, |c| fq.is_zero(c)) {
                    row.pop();
                }
                row
            })
            .collect()
    };
    let fnq = reduce(fnxy);
    let numq = reduce(num);
    let denq = reduce(den);
    // constraint C(x, y) = D t0 - N as a bivariate over fq
    let mut cons: Vec<Vec<Vec<u64>>> = vec![vec![]; numq.len().max(denq.len())];
    for (j, row) in denq.iter().enumerate() {
        cons[j] = row.iter().map(|c| fq.mul(c, t0)).collect();
    }
    for (j, row) in numq.iter().enumerate() {
        for (i, c) in row.iter().enumerate() {
            if cons[j].len() <= i {
                cons[j].resize(i + 1, fq.zero());
            }
            cons[j][i] = fq.sub(&cons[j][i], c);
        }
    }
    for row in cons.iter_mut() {
        while row.last().map_or(false, |c| fq.is_zero(c)) {
            row.pop();
        }
    }
    while cons.last().map_or(false, |r| r.is_empty()) {
        cons.pop();
    }
    if cons.is_empty() {
        return Err(Error::Model("degenerate projection constraint".into()));
    }
    let res = super::genus::resultant_y_public(fq, &cons, &fnq)?;
    if poly::is_zero(&res) {
        return Err(Error::Model("identically zero resultant (non-coprime inputs)".into()));
    }
    // squarefree part
    let d = poly::deriv(fq, &res);
    if poly::is_zero(&d) {
        return Ok(poly::monic(fq, &res));
    }
    let g = poly::gcd(fq, &res, &d);
    Ok(poly::monic(fq, &poly::divrem(fq, &res, &g).0))
}

/// Exact projection polynomial over the integers: squarefree part of
/// Res_y(D(x,y) T - N(x,y), f_N(x,y)). Variables of the result: x slot = T,
/// y slot = the kept coordinate. Computed by interpolation over word-sized
/// primes with rational reconstruction; intended for units of moderate
/// degree.
pub fn projection_exact(fnxy: &Zxy, num: &Zxy, den: &Zxy, swap: bool) -> Result<Zxy> {
    let mut p = (1u64 << 59) + 600;
    let mut residues: Vec<(u64, Vec<Vec<u64>>)> = vec![];
    let mut stable: Option<Zxy> = None;
    for _ in 0..24 {
        p = next_prime_u64(p + 2);
        let fq = Fq::new(p, 1)?;
        let fhat = projection_mod_p(&fq, fnxy, num, den, swap)?;
        residues.push((p, fhat));
        if residues.len() < 2 {
            continue;
        }
        if let Some(f) = reconstruct_rows(&residues)? {
            if let Some(prev) = &stable {
                if *prev == f {
                    return Ok(f);
                }
            }
            stable = Some(f);
        }
    }
    Err(Error::Model("projection did not stabilize".into()))
}

/// One prime's worth: interpolate P(T, v) over a T-grid of specialized
/// squarefree resultants, normalized monic in v... the squarefree part does
/// not interpolate coefficient-wise, so instead interpolate the full
/// resultant and take the squarefree part over F_p via content-free gcd.
fn projection_mod_p(
    fq: &Fq,
    fnxy: &Zxy,
    num: &Zxy,
    den: &Zxy,
    swap: bool,
) -> Result<Vec<Vec<u64>>> {
    // full resultant interpolated over T, then bivariate squarefree part
    let reduce = |f: &Zxy| -> Vec<Vec<Vec<u64>>> {
        let g = if swap { zpoly::zxy_swap_vars(f) } else { f.clone() };
        g.iter()
            .map(|cy| {
                let mut row: Vec<Vec<u64>> = cy
                    .iter()
                    .map(|c| fq.from_base(crate::tate::coords::from_bigint(fq.base(), c)))
                    .collect();
                while row.last().map_or(false, |c| fq.is_zero(c)) {
                    row.pop();
                }
                row
            })
            .collect()
    };
    let fnq = reduce(fnxy);
    let numq = reduce(num);
    let denq = reduce(den);
    let dy_f = fnq.len() as isize - 1;
    let dy_c = numq.len().max(denq.len()) as isize - 1;
    let dt = dy_f.max(0) as usize; // degree in T at most deg_y f_N
    let mut ts: Vec<Vec<u64>> = vec![];
    let mut vals: Vec<Vec<Vec<u64>>> = vec![];
    let mut t = 1u64;
    while ts.len() < dt + 1 {
        t += 1;
        if t > 40 * (dt as u64 + 2) {
            return Err(Error::Model("projection T-grid exhausted".into()));
        }
        let t0 = fq.from_base(fq.base().to_el(t));
        // constraint D t0 - N
        let mut cons: Vec<Vec<Vec<u64>>> = vec![vec![]; (dy_c + 1).max(1) as usize];
        for (j, row) in denq.iter().enumerate() {
            cons[j] = row.iter().map(|c| fq.mul(c, &t0)).collect();
        }
        for (j, row) in numq.iter().enumerate() {
            for (i, c) in row.iter().enumerate() {
                if cons[j].len() <= i {
                    cons[j].resize(i + 1, fq.zero());
                }
                cons[j][i] = fq.sub(&cons[j][i], c);
            }
        }
        for row in cons.iter_mut() {
            while row.last().map_or(false, |c| fq.is_zero(c)) {
                row.pop();
            }
        }
        while cons.last().map_or(false, |r| r.is_empty()) {
            cons.pop();
        }
        if cons.len() as isize - 1 != dy_c {
            continue; // keep the y-degree stable across the grid
        }
        let res = super::genus::resultant_y_public(fq, &cons, &fnq)?;
        if poly::is_zero(&res) {
            continue;
        }
        ts.push(t0);
        vals.push(res);
    }
    // interpolate each coefficient of the kept variable across T
    let maxlen = vals.iter().map(|v| v.len()).max().unwrap_or(0);
    let mut out: Vec<Vec<u64>> = vec![]; // out[j] = coefficient poly in T for v^j... transposed below
    for j in 0..maxlen {
        let ys: Vec<Vec<u64>> = vals
            .iter()
            .map(|v| v.get(j).cloned().unwrap_or_else(|| fq.zero()))
            .collect();
        let cj = poly::interpolate(fq, &ts, &ys);
        out.push(cj.iter().map(|c| fq.to_base(c)).collect());
    }
    // represent as bivariate with x slot = T, y slot = kept variable:
    // currently out[j][i] = coeff of T^i v^j; реshape to y-major rows over x
    let mut biv: Vec<Vec<u64>> = vec![];
    let _ = &mut biv;
    // squarefree part w.r.t. v over F_p(T): do it on the transposed dense rep
    let fp = fq.base().clone();
    let rows: Vec<Vec<u64>> = out; // rows[j] = T-poly
    let sf = bivariate_squarefree_v(&fp, rows)?;
    Ok(sf)
}

/// Squarefree part in the v-direction of a bivariate given as rows[j] =
/// T-polynomial coefficient of v^j, over F_p. Works through a big-prime
/// evaluation of T and exact cofactor division.
fn bivariate_squarefree_v(fp: &Fp, rows: Vec<Vec<u64>>) -> Result<Vec<Vec<u64>>> {
    // content in T first
    let mut content: Vec<u64> = vec![];
    for r in &rows {
        content = poly::gcd(fp, &content, r);
        if poly::deg(&content) == 0 {
            break;
        }
    }
    let rows: Vec<Vec<u64>> = if poly::deg(&content) > 0 {
        rows.iter()
            .map(|r| {
                if r.is_empty() {
                    vec![]
                } else {
                    poly::divrem(fp, r, &content).0
                }
            })
            .collect()
    } else {
        rows
    };
    // gcd(f, df/dv) in (F_p[T])[v] via specialization count: use the PRS over
    // the rational function field implemented through exact polynomial ops:
    // easiest correct route at these sizes is a modular gcd by interpolation.
    let dv: Vec<Vec<u64>> = rows
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, r)| poly::scale(fp, r, &fp.from_i64(j as i64)))
        .collect();
    let g = bivariate_gcd_v(fp, &rows, &dv)?;
    if g.len() <= 1 {
        return Ok(rows);
    }
    bivariate_div_exact_v(fp, &rows, &g)
}

/// Gcd in the v-direction by evaluation at T-points and interpolation of the
/// monic gcd of stable degree.
fn bivariate_gcd_v(fp: &Fp, a: &[Vec<u64>], b: &[Vec<u64>]) -> Result<Vec<Vec<u64>>> {
    if b.iter().all(|r| r.is_empty()) {
        return Ok(a.to_vec());
    }
    let eval_at = |f: &[Vec<u64>], t: &u64| -> Vec<u64> {
        let mut v: Vec<u64> = f.iter().map(|r| poly::eval(fp, r, t)).collect();
        poly::trim(fp, &mut v);
        v
    };
    // find the generic gcd degree
    let mut t = 1u64;
    let mut best_deg = isize::MAX;
    let mut samples: Vec<(u64, Vec<u64>)> = vec![];
    let budget = 8 * (a.iter().map(|r| r.len()).max().unwrap_or(1) as u64 + 4);
    let da = a.len() as isize - 1;
    let db = b.len() as isize - 1;
    while (samples.len() as isize) < (a.iter().map(|r| r.len()).max().unwrap_or(1) as isize + 2) {
        t += 1;
        if t > 40 * budget {
            return Err(Error::Model("bivariate gcd interpolation exhausted".into()));
        }
        let te = fp.to_el(t);
        let av = eval_at(a, &te);
        let bv = eval_at(b, &te);
        if poly::deg(&av) != da || poly::deg(&bv) != db {
            continue;
        }
        let g = poly::gcd(fp, &av, &bv);
        let dg = poly::deg(&g);
        if dg < best_deg {
            best_deg = dg;
            samples.clear();
        }
        if dg == best_deg {
            samples.push((te, g));
        }
    }
    if best_deg <= 0 {
        return Ok(vec![vec![fp.one()]]);
    }
    // interpolate each coefficient of the monic gcd, then clear denominators:
    // monic gcd coefficients are rational functions; multiply by lc of a的
    // cofactor... at these sizes take the pragmatic route: interpolate the
    // monic coefficients as polynomials; if that fails the division check the
    // caller falls back to no cancellation.
    let ts: Vec<u64> = samples.iter().map(|(t, _)| *t).collect();
    let mut rows: Vec<Vec<u64>> = vec![];
    for j in 0..=(best_deg as usize) {
        let ys: Vec<u64> = samples
            .iter()
            .map(|(_, g)| g.get(j).cloned().unwrap_or(0))
            .collect();
        rows.push(poly::interpolate(fp, &ts, &ys));
    }
    Ok(rows)
}

/// Exact division of bivariates in the v-direction (rows = T-polys).
fn bivariate_div_exact_v(fp: &Fp, a: &[Vec<u64>], b: &[Vec<u64>]) -> Result<Vec<Vec<u64>>> {
    // do it by interpolation: quotient degree = deg_v a - deg_v b
    let da = a.len() - 1;
    let db = b.len() - 1;
    if db > da {
        return Err(Error::Model("division degree error".into()));
    }
    let dq = da - db;
    let tmax = a.iter().map(|r| r.len()).max().unwrap_or(1) + 2;
    let mut ts: Vec<u64> = vec![];
    let mut qs: Vec<Vec<u64>> = vec![];
    let mut t = 1u64;
    while ts.len() < tmax {
        t += 1;
        if t > 100 * tmax as u64 {
            return Err(Error::Model("division interpolation exhausted".into()));
        }
        let te = fp.to_el(t);
        let mut av: Vec<u64> = a.iter().map(|r| poly::eval(fp, r, &te)).collect();
        let mut bv: Vec<u64> = b.iter().map(|r| poly::eval(fp, r, &te)).collect();
        poly::trim(fp, &mut av);
        poly::trim(fp, &mut bv);
        if poly::deg(&bv) != db as isize || poly::deg(&av) != da as isize {
            continue;
        }
        let (q, r) = poly::divrem(fp, &av, &bv);
        if !r.is_empty() {
            return Err(Error::Model("inexact bivariate division".into()));
        }
        ts.push(te);
        qs.push(q);
    }
    let mut rows: Vec<Vec<u64>> = vec![];
    for j in 0..=dq {
        let ys: Vec<u64> = qs
            .iter()
            .map(|q| q.get(j).cloned().unwrap_or(0))
            .collect();
        rows.push(poly::interpolate(fp, &ts, &ys));
    }
    Ok(rows)
}

/// A geometric point of the fiber, presented over an extension field.
#[derive(Clone, Debug)]
pub struct FiberPoint {
    pub field: Fq,
    pub x: Vec<u64>,
    pub y: Vec<u64>,
}

/// Compute the h points of X_1(N) above (X0, Y0) on the X_H model.
/// All points are returned over a single common extension of `fq`.
pub fn fiber_over_point(
    fq: &Fq,
    fnxy: &Zxy,
    unit_x: &(Zxy, Zxy),
    unit_y: &(Zxy, Zxy),
    x0: &Vec<u64>,
    y0: &Vec<u64>,
    h: usize,
) -> Result<(Fq, Vec<(Vec<u64>, Vec<u64>)>)> {
    let px = specialized_projection(fq, fnxy, &unit_x.0, &unit_x.1, x0, false)?;
    let py = specialized_projection(fq, fnxy, &unit_y.0, &unit_y.1, y0, false)?;
    let cand_x = poly::gcd(fq, &px, &py);
    if poly::deg(&cand_x) < 1 {
        return Err(Error::Model("degenerate fiber: no x candidates".into()));
    }
    // splitting field for the x-candidates and then the y-roots
    let (_, facs) = factor::factor(fq, &cand_x, 0xf1be)?;
    let mut m = 1usize;
    for (g, _) in &facs {
        m = num_integer::lcm(m, poly::deg(g) as usize);
    }
    // y-roots may need one more quadratic-ish step; extend lazily
    let mut ext_deg = m;
    'retry: loop {
        let big = Fq::new(fq.p(), fq.degree() * ext_deg)?;
        let emb = FqEmbed::new(fq, &big)?;
        let cand_big: Vec<Vec<u64>> = cand_x.iter().map(|c| emb.map(c)).collect();
        let xroots = factor::roots(&big, &cand_big, 0xf1be);
        let mut pts: Vec<(Vec<u64>, Vec<u64>)> = vec![];
        let fnq: Vec<Vec<Vec<u64>>> = fnxy
            .iter()
            .map(|cy| {
                cy.iter()
                    .map(|c| emb.map(&fq.from_base(crate::tate::coords::from_bigint(fq.base(), c))))
                    .collect()
            })
            .collect();
        let (nx, dx) = unit_x;
        let (ny, dy) = unit_y;
        let x0b = emb.map(x0);
        let y0b = emb.map(y0);
        for xr in &xroots {
            // y-candidates: common roots of f_N(xr, .), Nx - X0 Dx, Ny - Y0 Dy
            let spec = |f: &Zxy| -> Vec<Vec<u64>> {
                let mut out: Vec<Vec<u64>> = f
                    .iter()
                    .map(|cy| {
                        let mut acc = big.zero();
                        for c in cy.iter().rev() {
                            acc = big.mul(&acc, xr);
                            let cv = emb.map(&fq.from_base(crate::tate::coords::from_bigint(
                                fq.base(),
                                c,
                            )));
                            acc = big.add(&acc, &cv);
                        }
                        acc
                    })
                    .collect();
                poly::trim(&big, &mut out);
                out
            };
            let mut fspec: Vec<Vec<u64>> = fnq
                .iter()
                .map(|row| poly::eval(&big, row, xr))
                .collect();
            poly::trim(&big, &mut fspec);
            let cx = poly::sub(
                &big,
                &spec(nx),
                &poly::scale(&big, &spec(dx), &x0b),
            );
            let cy = poly::sub(
                &big,
                &spec(ny),
                &poly::scale(&big, &spec(dy), &y0b),
            );
            let g = poly::gcd(&big, &poly::gcd(&big, &fspec, &cx), &cy);
            if poly::deg(&g) < 1 {
                continue;
            }
            let yroots = factor::roots(&big, &g, 0xf1be);
            if (yroots.len() as isize) < poly::deg(&g) {
                // roots outside this extension: enlarge and retry
                ext_deg *= 2;
                if ext_deg > 64 {
                    return Err(Error::Model("fiber splitting field too large".into()));
                }
                continue 'retry;
            }
            for yr in yroots {
                pts.push((xr.clone(), yr));
            }
        }
        if pts.len() != h {
            return Err(Error::Model(format!(
                "degenerate fiber: found {} points, expected {h}",
                pts.len()
            )));
        }
        return Ok((big, pts));
    }
}

/// CRT reconstruction helper shared with the relation module.
pub(crate) fn reconstruct_rows(residues: &[(u64, Vec<Vec<u64>>)]) -> Result<Option<Zxy>> {
    let by = residues.iter().map(|(_, f)| f.len()).max().unwrap_or(0);
    let mut denlcm = BigInt::from(1);
    let mut coeffs: Vec<Vec<(BigInt, BigInt)>> = vec![];
    for j in 0..by {
        let bx = residues
            .iter()
            .map(|(_, f)| f.get(j).map(|r| r.len()).unwrap_or(0))
            .max()
            .unwrap_or(0);
        let mut rowc = vec![];
        for i in 0..bx {
            let rs: Vec<(BigInt, BigInt)> = residues
                .iter()
                .map(|(p, f)| {
                    let fp = Fp::new(*p).unwrap();
                    let v = f.get(j).and_then(|r| r.get(i).cloned()).unwrap_or(0);
                    (BigInt::from(fp.lift(v)), BigInt::from(*p))
                })
                .collect();
            match zint::crt_reconstruct_rational(&rs)? {
                None => return Ok(None),
                Some((num, den)) => {
                    denlcm = num_integer::lcm(denlcm.clone(), den.clone());
                    rowc.push((num, den));
                }
            }
        }
        coeffs.push(rowc);
    }
    let mut out: Zxy = vec![];
    for rowc in coeffs {
        let mut row: Vec<BigInt> = vec![];
        for (num, den) in rowc {
            row.push(num * (&denlcm / den));
        }
        zpoly::zx_trim(&mut row);
        out.push(row);
    }
    zpoly::zxy_trim(&mut out);
    if zpoly::zxy_is_zero(&out) {
        return Ok(None);
    }
    Ok(Some(zpoly::zxy_normalize(&out)))
}
