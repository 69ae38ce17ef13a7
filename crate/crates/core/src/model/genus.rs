//! Genus computations: the congruence-subgroup formula for X_H(N) and the
//! geometric genus of a plane model via delta invariants.
//!
//! The plane genus works on the closure of the curve in P^1 x P^1: for a
//! bidegree (a, b) model the arithmetic genus is (a-1)(b-1) and the geometric
//! genus subtracts the delta invariant of every singular point, computed by
//! successive blowups (delta = sum of m(m-1)/2 over infinitely near points).
//! Everything runs modulo two independent word-sized primes and is accepted
//! only on agreement, with a third prime as tie-break.

use crate::algebra::fp::{next_prime_u64, Fp};
use crate::algebra::fq::{Fq, FqEmbed};
use crate::algebra::ring::{Field, Ring};
use crate::algebra::zpoly::{self, Zxy};
use crate::algebra::{factor, poly};
use crate::error::{Error, Result};
use crate::units::subgroup_elements;

/// Genus of X_H(N) for prime N > 3 by the index / elliptic-point / cusp
/// count formula.
pub fn genus_xh(level: u32, h_gens: &[u64]) -> Result<i64> {
    if !crate::algebra::fp::is_prime_u64(level as u64) || level <= 3 {
        return Err(Error::Model(format!(
            "genus formula implemented for prime levels > 3, got {level}"
        )));
    }
    let ell = level as i64;
    let h_elts = subgroup_elements(level, h_gens);
    let h = (h_elts.len() / 2) as i64;
    let mu = (ell * ell - 1) / (2 * h);
    let eps_inf = (ell - 1) / h;
    // order-2 elliptic points need a square root of -1 inside H
    let eps2 = if ell % 4 == 1 {
        let u = (1..level as u64).find(|&u| (u * u + 1) % level as u64 == 0);
        match u {
            Some(u) if h_elts.contains(&u) => eps_inf,
            _ => 0,
        }
    } else {
        0
    };
    // order-3 elliptic points need a primitive 6th root of unity inside H
    let eps3 = if ell % 3 == 1 {
        let z = (1..level as u64)
            .find(|&z| (z * z + level as u64 * level as u64 - z + 1) % level as u64 == 0);
        match z {
            Some(z) if h_elts.contains(&z) => eps_inf,
            _ => 0,
        }
    } else {
        0
    };
    // g = 1 + mu/12 - eps2/4 - eps3/3 - eps_inf/2, exactly
    let twelve_g = 12 + mu - 3 * eps2 - 4 * eps3 - 6 * eps_inf;
    if twelve_g % 12 != 0 {
        return Err(Error::Model("non-integral genus; bad subgroup data".into()));
    }
    Ok(twelve_g / 12)
}

pub type FqPoly2 = Vec<Vec<Vec<u64>>>; // y-major bivariate over an extension field

/// Roots of all irreducible factors of `f`, organized by extension: for each
/// distinct degree e, the pair (extension field F_{q^e}, every root of the
/// degree-e part in it). Processing each root with weight one visits each
/// geometric point of the factor set exactly once.
fn roots_by_extension(fq: &Fq, f: &[Vec<u64>], seed: u64) -> Result<Vec<(Fq, FqEmbed, Vec<Vec<u64>>)>> {
    let monic = poly::monic(fq, f);
    // squarefree part is enough: multiplicities do not matter for the points
    let df = poly::deriv(fq, &monic);
    let sf = if poly::is_zero(&df) {
        monic.clone()
    } else {
        let g = poly::gcd(fq, &monic, &df);
        poly::divrem(fq, &monic, &g).0
    };
    let mut out = vec![];
    for (part, e) in factor::distinct_degree(fq, &sf) {
        if poly::deg(&part) < 1 {
            continue;
        }
        let ext = Fq::new(fq.p(), fq.degree() * e)?;
        let emb = FqEmbed::new(fq, &ext)?;
        let lifted: Vec<Vec<u64>> = part.iter().map(|c| emb.map(c)).collect();
        let roots = factor::roots(&ext, &lifted, seed);
        if roots.len() != poly::deg(&part) as usize {
            return Err(Error::Model("degree part did not split in its extension".into()));
        }
        out.push((ext, emb, roots));
    }
    Ok(out)
}


fn reduce_mod_p(f: &Zxy, fq: &Fq) -> FqPoly2 {
    let fp = fq.base();
    f.iter()
        .map(|cy| {
            let mut row: Vec<Vec<u64>> = cy
                .iter()
                .map(|c| fq.from_base(crate::tate::coords::from_bigint(fp, c)))
                .collect();
            while row.last().map_or(false, |c| fq.is_zero(c)) {
                row.pop();
            }
            row
        })
        .collect()
}

fn deg_x(f: &FqPoly2) -> isize {
    f.iter().map(|r| r.len() as isize - 1).max().unwrap_or(-1)
}

fn deg_y(f: &FqPoly2) -> isize {
    let mut d = -1isize;
    for (j, r) in f.iter().enumerate() {
        if !r.is_empty() {
            d = j as isize;
        }
    }
    d
}

fn eval_partial_y(fq: &Fq, f: &FqPoly2, y0: &[u64]) -> Vec<Vec<u64>> {
    // returns the x-polynomial f(x, y0)
    let mut out: Vec<Vec<u64>> = vec![];
    let mut yj = fq.one();
    for row in f.iter() {
        for (i, c) in row.iter().enumerate() {
            if out.len() <= i {
                out.resize(i + 1, fq.zero());
            }
            let t = fq.mul(c, &yj);
            out[i] = fq.add(&out[i], &t);
        }
        yj = fq.mul(&yj, &y0.to_vec());
    }
    while out.last().map_or(false, |c| fq.is_zero(c)) {
        out.pop();
    }
    out
}

fn eval_partial_x(fq: &Fq, f: &FqPoly2, x0: &[u64]) -> Vec<Vec<u64>> {
    // returns the y-polynomial f(x0, y)
    let mut out: Vec<Vec<u64>> = f
        .iter()
        .map(|row| poly::eval(fq, row, &x0.to_vec()))
        .collect();
    while out.last().map_or(false, |c| fq.is_zero(c)) {
        out.pop();
    }
    out
}

fn partial_x(fq: &Fq, f: &FqPoly2) -> FqPoly2 {
    f.iter().map(|row| poly::deriv(fq, row)).collect()
}

fn partial_y(fq: &Fq, f: &FqPoly2) -> FqPoly2 {
    let mut out: FqPoly2 = vec![];
    for (j, row) in f.iter().enumerate().skip(1) {
        out.push(row.iter().map(|c| fq.mul_i64(c, j as i64)).collect());
    }
    out
}

/// Map a bivariate polynomial through a field embedding.
fn embed_poly(emb: &FqEmbed, f: &FqPoly2) -> FqPoly2 {
    f.iter()
        .map(|row| row.iter().map(|c| emb.map(c)).collect())
        .collect()
}

/// Shift the origin to (x0, y0).
fn shift_origin(fq: &Fq, f: &FqPoly2, x0: &[u64], y0: &[u64]) -> FqPoly2 {
    // substitute x -> x + x0 first, rowwise Taylor shift; then y -> y + y0
    let shifted_x: FqPoly2 = f
        .iter()
        .map(|row| taylor_shift(fq, row, x0))
        .collect();
    // y shift: treat columns; do a Horner accumulation over rows
    // f(x, y + y0) = sum_j row_j(x) (y + y0)^j
    let mut out: FqPoly2 = vec![];
    for row in shifted_x.iter().rev() {
        // out = out * (y + y0) + row
        let mut next: FqPoly2 = vec![vec![]; out.len() + 1];
        for (j, r) in out.iter().enumerate() {
            // (y + y0) * r y^j = r y^{j+1} + y0 r y^j
            next[j + 1] = poly::add(fq, &next[j + 1], r);
            let scaled: Vec<Vec<u64>> = r.iter().map(|c| fq.mul(c, &y0.to_vec())).collect();
            next[j] = poly::add(fq, &next[j], &scaled);
        }
        next[0] = poly::add(fq, &next[0], row);
        while next.last().map_or(false, |r| r.is_empty()) {
            next.pop();
        }
        out = next;
    }
    out
}

fn taylor_shift(fq: &Fq, f: &[Vec<u64>], a: &[u64]) -> Vec<Vec<u64>> {
    // f(x + a) by Horner
    let mut out: Vec<Vec<u64>> = vec![];
    for c in f.iter().rev() {
        // out = out * (x + a) + c
        let mut next = vec![fq.zero(); out.len() + 1];
        for (i, v) in out.iter().enumerate() {
            next[i + 1] = fq.add(&next[i + 1], v);
            let t = fq.mul(v, &a.to_vec());
            next[i] = fq.add(&next[i], &t);
        }
        next[0] = fq.add(&next[0], c);
        while next.last().map_or(false, |c| fq.is_zero(c)) {
            next.pop();
        }
        out = next;
    }
    out
}

/// Multiplicity at the origin: smallest total degree with nonzero coefficient.
fn multiplicity(fq: &Fq, f: &FqPoly2) -> usize {
    let mut m = usize::MAX;
    for (j, row) in f.iter().enumerate() {
        for (i, c) in row.iter().enumerate() {
            if !fq.is_zero(c) && i + j < m {
                m = i + j;
            }
        }
    }
    m
}

/// Blow up at the origin, first chart: g(x, t) = f(x, x t) / x^m.
fn blowup_chart1(fq: &Fq, f: &FqPoly2, m: usize) -> FqPoly2 {
    // monomial x^i y^j -> x^{i+j-m} t^j
    let mut out: FqPoly2 = vec![];
    for (j, row) in f.iter().enumerate() {
        for (i, c) in row.iter().enumerate() {
            if fq.is_zero(c) {
                continue;
            }
            let xi = i + j - m;
            if out.len() <= j {
                out.resize(j + 1, vec![]);
            }
            if out[j].len() <= xi {
                out[j].resize(xi + 1, fq.zero());
            }
            out[j][xi] = fq.add(&out[j][xi], c);
        }
    }
    out
}

/// Blow up at the origin, second chart: g(u, y) = f(y u, y) / y^m; only the
/// point (u, y) = (0, 0) is new relative to chart 1.
fn blowup_chart2(fq: &Fq, f: &FqPoly2, m: usize) -> FqPoly2 {
    // monomial x^i y^j -> u^i y^{i+j-m}
    let mut out: FqPoly2 = vec![];
    for (j, row) in f.iter().enumerate() {
        for (i, c) in row.iter().enumerate() {
            if fq.is_zero(c) {
                continue;
            }
            let yj = i + j - m;
            if out.len() <= yj {
                out.resize(yj + 1, vec![]);
            }
            if out[yj].len() <= i {
                out[yj].resize(i + 1, fq.zero());
            }
            out[yj][i] = fq.add(&out[yj][i], c);
        }
    }
    out
}

/// Delta invariant of the singularity at the origin via successive blowups,
/// weighted over the base: conjugate infinitely-near points contribute their
/// residue degree over `fq`.
fn delta_at_origin(fq: &Fq, f: &FqPoly2, depth: usize) -> Result<u64> {
    if depth > 64 {
        return Err(Error::Model("blowup recursion too deep".into()));
    }
    let m = multiplicity(fq, f);
    if m <= 1 {
        return Ok(0);
    }
    let mut delta = (m * (m - 1) / 2) as u64;
    // chart 1: points on the exceptional line are the roots of g(0, t)
    let g1 = blowup_chart1(fq, f, m);
    let ex: Vec<Vec<u64>> = {
        let mut e: Vec<Vec<u64>> = g1
            .iter()
            .map(|row| row.first().cloned().unwrap_or_else(|| fq.zero()))
            .collect();
        while e.last().map_or(false, |c| fq.is_zero(c)) {
            e.pop();
        }
        e
    };
    for (ext, emb, roots) in roots_by_extension(fq, &ex, 0xb10b)? {
        let gext = embed_poly(&emb, &g1);
        for root in roots {
            let shifted = shift_origin(&ext, &gext, &ext.zero(), &root);
            delta += delta_at_origin(&ext, &shifted, depth + 1)?;
        }
    }
    // chart 2: the point at t = infinity, present iff g2(0,0) = 0
    let g2 = blowup_chart2(fq, f, m);
    let at_origin = g2
        .first()
        .and_then(|row| row.first().cloned())
        .unwrap_or_else(|| fq.zero());
    if fq.is_zero(&at_origin) {
        delta += delta_at_origin(fq, &g2, depth + 1)?;
    }
    Ok(delta)
}

/// Sum of delta invariants over all singular points with x-coordinate among
/// the roots of the given squarefree candidate polynomial (main chart).
fn delta_sum_affine(fq: &Fq, f: &FqPoly2) -> Result<u64> {
    let gx = partial_x(fq, f);
    let gy = partial_y(fq, f);
    // resultants by evaluation-interpolation in x
    let r1 = resultant_y(fq, f, &gy)?;
    let r2 = resultant_y(fq, f, &gx)?;
    let cand = poly::gcd(fq, &r1, &r2);
    if poly::deg(&cand) < 0 {
        return Err(Error::Model("degenerate singular locus".into()));
    }
    let mut total = 0u64;
    for (kx, embx, xroots) in roots_by_extension(fq, &cand, 0xcafe)? {
        let fk = embed_poly(&embx, f);
        let gxk = embed_poly(&embx, &gx);
        let gyk = embed_poly(&embx, &gy);
        for x0 in xroots {
            let s0 = eval_partial_x(&kx, &fk, &x0);
            let s1 = eval_partial_x(&kx, &gxk, &x0);
            let s2 = eval_partial_x(&kx, &gyk, &x0);
            let g12 = poly::gcd(&kx, &s1, &s2);
            let sing = poly::gcd(&kx, &s0, &g12);
            if poly::deg(&sing) < 1 {
                continue;
            }
            for (ky, emby, yroots) in roots_by_extension(&kx, &sing, 0xcafe)? {
                let fky = embed_poly(&emby, &fk);
                let x0y = emby.map(&x0);
                for y0 in yroots {
                    let shifted = shift_origin(&ky, &fky, &x0y, &y0);
                    total += delta_at_origin(&ky, &shifted, 0)?;
                }
            }
        }
    }
    Ok(total)
}

/// Res_y of two bivariate polynomials over Fq by evaluation-interpolation.
pub fn resultant_y_public(fq: &Fq, f: &FqPoly2, g: &FqPoly2) -> Result<Vec<Vec<u64>>> {
    resultant_y(fq, f, g)
}

fn resultant_y(fq: &Fq, f: &FqPoly2, g: &FqPoly2) -> Result<Vec<Vec<u64>>> {
    let bound = (deg_x(f).max(0) * deg_y(g).max(0) + deg_x(g).max(0) * deg_y(f).max(0)) as usize;
    let dyf = deg_y(f);
    let dyg = deg_y(g);
    if dyf < 0 || dyg < 0 {
        return Err(Error::Model("zero polynomial in resultant".into()));
    }
    let mut xs: Vec<Vec<u64>> = vec![];
    let mut ys: Vec<Vec<u64>> = vec![];
    let mut t = 0u64;
    while xs.len() < bound + 1 {
        t += 1;
        if t > 40 * (bound as u64 + 2) {
            return Err(Error::Model("resultant interpolation exhausted".into()));
        }
        let x0 = fq.from_base(fq.base().to_el(t));
        let fy = eval_partial_x(fq, f, &x0);
        let gy = eval_partial_x(fq, g, &x0);
        // require no degree drop so the specialization commutes with Res
        if poly::deg(&fy) != dyf || poly::deg(&gy) != dyg {
            continue;
        }
        xs.push(x0);
        ys.push(resultant_univ(fq, &fy, &gy));
    }
    Ok(poly::interpolate(fq, &xs, &ys))
}

/// Univariate resultant over a field by the Euclidean PRS.
pub fn resultant_univ<F: Field>(field: &F, a: &[F::El], b: &[F::El]) -> F::El {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    if a.is_empty() || b.is_empty() {
        return field.zero();
    }
    let mut res = field.one();
    let mut sign = false;
    loop {
        let da = poly::deg(&a);
        let db = poly::deg(&b);
        if db == 0 {
            res = field.mul(&res, &field.pow_u64(&b[0], da as u64));
            break;
        }
        let r = poly::rem(field, &a, &b);
        if r.is_empty() {
            return field.zero();
        }
        let dr = poly::deg(&r);
        res = field.mul(
            &res,
            &field.pow_u64(b.last().unwrap(), (da - dr) as u64),
        );
        if da % 2 == 1 && db % 2 == 1 {
            sign = !sign;
        }
        a = b;
        b = r;
    }
    if sign {
        field.neg(&res)
    } else {
        res
    }
}

/// Geometric genus of the plane curve mod one prime.
fn genus_mod_p(f: &Zxy, p: u64) -> Result<i64> {
    let fq = Fq::new(p, 1)?;
    let fp = reduce_mod_p(f, &fq);
    let a = deg_x(&fp);
    let b = deg_y(&fp);
    if a != zpoly::zxy_deg_x(f) || b != zpoly::zxy_deg_y(f) {
        return Err(Error::Model("bad reduction (degree drop)".into()));
    }
    let arith = (a - 1) * (b - 1);
    let mut delta = delta_sum_affine(&fq, &fp)?;
    // chart at x = infinity: u^a f(1/u, y); new points have u = 0
    let fu = swap_x_infinity(&fq, &fp, a as usize);
    delta += delta_on_line(&fq, &fu)?;
    // chart at y = infinity: v^b f(x, 1/v); new points have v = 0 (swap roles)
    let fv = swap_y_infinity(&fq, &fp, b as usize);
    delta += delta_on_line(&fq, &swap_vars_fq(&fq, &fv))?;
    // corner (u, v) = (0, 0)
    let fuv = swap_y_infinity(&fq, &fu, b as usize);
    let at00 = fuv
        .first()
        .and_then(|r| r.first().cloned())
        .unwrap_or_else(|| fq.zero());
    if fq.is_zero(&at00) {
        let d = delta_at_origin(&fq, &fuv, 0)?;
        delta += d;
    }
    let g = arith as i64 - delta as i64;
    if g < 0 {
        return Err(Error::Model(
            "negative genus: curve reducible or prime bad".into(),
        ));
    }
    Ok(g)
}

/// substitute x -> 1/u and clear: u^a f(1/u, y).
fn swap_x_infinity(fq: &Fq, f: &FqPoly2, a: usize) -> FqPoly2 {
    f.iter()
        .map(|row| {
            let mut r = vec![fq.zero(); a + 1];
            for (i, c) in row.iter().enumerate() {
                r[a - i] = c.clone();
            }
            while r.last().map_or(false, |c| fq.is_zero(c)) {
                r.pop();
            }
            r
        })
        .collect()
}

/// substitute y -> 1/v and clear: v^b f(x, 1/v).
fn swap_y_infinity(fq: &Fq, f: &FqPoly2, b: usize) -> FqPoly2 {
    let mut out: FqPoly2 = vec![vec![]; b + 1];
    for (j, row) in f.iter().enumerate() {
        out[b - j] = row.clone();
    }
    while out.last().map_or(false, |r| r.is_empty()) {
        out.pop();
    }
    let _ = fq;
    out
}

fn swap_vars_fq(fq: &Fq, f: &FqPoly2) -> FqPoly2 {
    let dx = deg_x(f);
    if dx < 0 {
        return vec![];
    }
    let mut out: FqPoly2 = vec![vec![]; dx as usize + 1];
    for (j, row) in f.iter().enumerate() {
        for (i, c) in row.iter().enumerate() {
            if fq.is_zero(c) {
                continue;
            }
            if out[i].len() <= j {
                out[i].resize(j + 1, fq.zero());
            }
            out[i][j] = c.clone();
        }
    }
    let _ = fq;
    out
}

/// delta contributions of singular points on the line x = 0 only.
fn delta_on_line(fq: &Fq, f: &FqPoly2) -> Result<u64> {
    // singular points (0, y0): common roots of f(0,y), f_x(0,y), f_y(0,y)
    let f0 = eval_partial_x(fq, f, &fq.zero());
    if f0.is_empty() {
        return Err(Error::Model("curve contains the infinity line".into()));
    }
    let gx = partial_x(fq, f);
    let gy = partial_y(fq, f);
    let s1 = eval_partial_x(fq, &gx, &fq.zero());
    let s2 = eval_partial_x(fq, &gy, &fq.zero());
    let sing = poly::gcd(fq, &poly::gcd(fq, &f0, &s1), &s2);
    if poly::deg(&sing) < 1 {
        return Ok(0);
    }
    let mut total = 0u64;
    for (k, emb, roots) in roots_by_extension(fq, &sing, 0x11e)? {
        let fk = embed_poly(&emb, f);
        for y0 in roots {
            let shifted = shift_origin(&k, &fk, &k.zero(), &y0);
            total += delta_at_origin(&k, &shifted, 0)?;
        }
    }
    Ok(total)
}

/// Geometric genus of the projective closure of {f = 0} in P^1 x P^1,
/// computed over independent primes until two agree.
pub fn plane_genus(f: &Zxy) -> Result<i64> {
    let mut p = 1_048_583u64; // first prime above 2^20 > 10^6
    let mut seen: Vec<i64> = vec![];
    for _ in 0..5 {
        let g = loop {
            match genus_mod_p(f, p) {
                Ok(g) => {
                    p = next_prime_u64(p + 1);
                    break g;
                }
                Err(_) => {
                    p = next_prime_u64(p + 1);
                }
            }
        };
        seen.push(g);
        let matches = seen.iter().filter(|&&x| x == g).count();
        if matches >= 2 {
            return Ok(g);
        }
    }
    Err(Error::Model(format!(
        "plane genus did not stabilize: {seen:?}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn genus_formula_table_values() {
        // (16,29): H = <4>, dim J_H = 4
        assert_eq!(genus_xh(29, &[4]).unwrap(), 4);
        // (18,29): H = <12>, dim J_H = 8
        assert_eq!(genus_xh(29, &[12]).unwrap(), 8);
        // (12,31): H = <27>, dim J_H = 6
        assert_eq!(genus_xh(31, &[27]).unwrap(), 6);
        // X_1(29) and X_1(31)
        assert_eq!(genus_xh(29, &[]).unwrap(), 22);
        assert_eq!(genus_xh(31, &[]).unwrap(), 26);
        // X_1(11), X_1(13)
        assert_eq!(genus_xh(11, &[]).unwrap(), 1);
        assert_eq!(genus_xh(13, &[]).unwrap(), 2);
        // X_0(11) via the full group
        assert_eq!(genus_xh(11, &[2]).unwrap(), 1);
        // (22,41): H = <6^2>, dim 5; (12,41): H = <6^4>, dim 11
        assert_eq!(genus_xh(41, &[36]).unwrap(), 5);
        assert_eq!(genus_xh(41, &[6u64.pow(4) % 41]).unwrap(), 11);
        // (26,37): H = <8>, dim 4 and (16,43): H = <27>, dim 9
        assert_eq!(genus_xh(37, &[8]).unwrap(), 4);
        assert_eq!(genus_xh(43, &[27]).unwrap(), 9);
    }

    #[test]
    fn smooth_cubic_has_genus_one() {
        // y^2 - x^3 - 1
        let f: Zxy = vec![
            vec![BigInt::from(-1), BigInt::from(0), BigInt::from(0), BigInt::from(-1)],
            vec![],
            vec![BigInt::from(1)],
        ];
        assert_eq!(plane_genus(&f).unwrap(), 1);
    }

    #[test]
    fn nodal_cubic_has_genus_zero() {
        // y^2 - x^2 (x + 1): node at the origin
        let f: Zxy = vec![
            vec![BigInt::from(0), BigInt::from(0), BigInt::from(-1), BigInt::from(-1)],
            vec![],
            vec![BigInt::from(1)],
        ];
        assert_eq!(plane_genus(&f).unwrap(), 0);
    }

    #[test]
    fn cuspidal_cubic_has_genus_zero() {
        // y^2 - x^3
        let f: Zxy = vec![
            vec![BigInt::from(0), BigInt::from(0), BigInt::from(0), BigInt::from(-1)],
            vec![],
            vec![BigInt::from(1)],
        ];
        assert_eq!(plane_genus(&f).unwrap(), 0);
    }

    #[test]
    fn fn_models_have_x1_genus() {
        // f_11 is a plane model of X_1(11): genus 1; f_13 of X_1(13): genus 2
        let f11 = crate::tate::fn_poly::fn_in_xy(11).unwrap();
        assert_eq!(plane_genus(&f11).unwrap(), 1);
        let f13 = crate::tate::fn_poly::fn_in_xy(13).unwrap();
        assert_eq!(plane_genus(&f13).unwrap(), 2);
    }
}
