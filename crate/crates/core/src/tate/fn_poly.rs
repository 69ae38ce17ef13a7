//! The curve equations of X_1(N): the raw order polynomial F_N in (b, c) and
//! the reduced polynomials f_N in the (r, s) chart (6 <= N <= 9) or the
//! (x, y) chart (N >= 10).
//!
//! F_N is the exact-order-N component of the division polynomial value
//! W_N = psi_N((0,0)) over Z[b, c]: factors shared with W_d for proper
//! divisors d | N and stray powers of b are removed.
//!
//! Two routes produce f_N in (x, y):
//!  * a fully symbolic route (substitution plus junk-factor stripping), used
//!    for small N and as a cross-check;
//!  * an evaluation-interpolation route over word-sized primes that scales to
//!    N around 50: the cleared sequence V_n = E^(n^2-1) W_n(b(x,y), c(x,y))
//!    satisfies the same recurrences with a single exact division, so values
//!    and specializations are cheap, and the junk structure is discovered
//!    once per N from two univariate specializations.

use super::coords::{self, BiFrac};
use super::eds::{Eds, PolyRing, ZxyRing};
use crate::algebra::fp::{next_prime_u64, Fp};
use crate::algebra::poly;
use crate::algebra::ring::{Field, Ring};
use crate::algebra::zint;
use crate::algebra::zpoly::{self, Zx, Zxy};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::Mutex;

/// Coordinate chart tags for the reduced polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chart {
    BC,
    RS,
    XY,
}

impl Chart {
    pub fn tag(&self) -> &'static str {
        match self {
            Chart::BC => "bc",
            Chart::RS => "rs",
            Chart::XY => "xy",
        }
    }
    pub fn from_tag(s: &str) -> Option<Chart> {
        match s {
            "bc" => Some(Chart::BC),
            "rs" => Some(Chart::RS),
            "xy" => Some(Chart::XY),
            _ => None,
        }
    }
}

/// Natural chart for level N: (b,c) for 4..5, (r,s) for 6..9, (x,y) for >= 10.
pub fn natural_chart(n: u32) -> Chart {
    match n {
        0..=5 => Chart::BC,
        6..=9 => Chart::RS,
        _ => Chart::XY,
    }
}

static FN_CACHE: Mutex<Option<HashMap<(u32, Chart), Zxy>>> = Mutex::new(None);

fn cache_get(n: u32, chart: Chart) -> Option<Zxy> {
    FN_CACHE
        .lock()
        .unwrap()
        .as_ref()
        .and_then(|m| m.get(&(n, chart)).cloned())
}

fn cache_put(n: u32, chart: Chart, f: Zxy) {
    let mut g = FN_CACHE.lock().unwrap();
    g.get_or_insert_with(HashMap::new).insert((n, chart), f);
}

/// The raw order polynomial F_N in Z[b, c] (b <-> x slot, c <-> y slot).
pub fn raw_order_polynomial(n: u32) -> Result<Zxy> {
    if n < 4 {
        return Err(Error::Moduli(format!(
            "Tate form requires point order > 3, got N = {n}"
        )));
    }
    if n > 100 {
        return Err(Error::Moduli(format!(
            "level N = {n} above supported cap 100"
        )));
    }
    if let Some(f) = cache_get(n, Chart::BC) {
        return Ok(f);
    }
    let ring = ZxyRing;
    let mut eds = Eds::<ZxyRing>::tate_symbolic(&ring);
    let mut w = eds.get(n as u64);
    // strip everything shared with proper-divisor conditions
    for d in 2..n {
        if n % d != 0 {
            continue;
        }
        let wd = eds.get(d as u64);
        w = strip_gcd(&w, &wd);
    }
    // stray powers of b and degenerate discriminant components
    let b = zpoly::zxy_monomial(BigInt::one(), 1, 0);
    w = strip_gcd(&w, &b);
    w = strip_gcd(&w, &super::tate_discriminant_sym());
    let f = zpoly::zxy_normalize(&w);
    cache_put(n, Chart::BC, f.clone());
    Ok(f)
}

fn strip_gcd(f: &Zxy, junk: &Zxy) -> Zxy {
    let mut f = f.clone();
    loop {
        let g = zpoly::zxy_gcd(&f, junk);
        let gn = zpoly::zxy_normalize(&g);
        if zpoly::zxy_deg_x(&gn) <= 0 && zpoly::zxy_deg_y(&gn) <= 0 {
            return f;
        }
        f = zpoly::zxy_div_exact(&f, &gn);
    }
}

/// f_N in its natural chart, computed symbolically. Cheap for N up to the
/// mid-teens; the modular route takes over beyond that.
pub fn fn_reduced_symbolic(n: u32) -> Result<(Chart, Zxy)> {
    let chart = natural_chart(n);
    if let Some(f) = cache_get(n, chart) {
        return Ok((chart, f));
    }
    let fbc = raw_order_polynomial(n)?;
    let out = match chart {
        Chart::BC => fbc,
        Chart::RS => reduce_bc_to_rs(&fbc),
        Chart::XY => {
            let frs = reduce_bc_to_rs(&fbc);
            reduce_rs_to_xy(&frs)
        }
    };
    cache_put(n, chart, out.clone());
    Ok((chart, out))
}

fn reduce_bc_to_rs(fbc: &Zxy) -> Zxy {
    // b = rs(r-1), c = s(r-1) are polynomials; substitute then strip the
    // exceptional components r, s, r-1.
    let (b, c) = coords::bc_in_rs();
    let sub = coords::substitute(fbc, &b, &c);
    let mut f = sub.num;
    for atom in rs_atoms() {
        f = strip_gcd(&f, &atom);
    }
    // the (r, s) chart breaks degree ties toward s
    zpoly::zxy_normalize_pref(&f, true)
}

fn rs_atoms() -> Vec<Zxy> {
    let r = zpoly::zxy_monomial(BigInt::one(), 1, 0);
    let s = zpoly::zxy_monomial(BigInt::one(), 0, 1);
    let rm1 = zpoly::zxy_sub(&r, &zpoly::zxy_const(1));
    vec![r, s, rm1]
}

fn reduce_rs_to_xy(frs: &Zxy) -> Zxy {
    let (r, s) = coords::rs_in_xy();
    let sub = coords::substitute(frs, &r, &s);
    let mut f = sub.num;
    for atom in xy_atoms() {
        f = strip_gcd(&f, &atom);
    }
    zpoly::zxy_normalize(&f)
}

/// The coordinate junk atoms in the (x, y) chart.
fn xy_atoms() -> Vec<Zxy> {
    let x = zpoly::zxy_monomial(BigInt::one(), 1, 0);
    let y = zpoly::zxy_monomial(BigInt::one(), 0, 1);
    let one = zpoly::zxy_const(1);
    let xy = zpoly::zxy_mul(&x, &y);
    let xym1 = zpoly::zxy_sub(&xy, &one);
    let xm1 = zpoly::zxy_sub(&x, &one);
    let ym1 = zpoly::zxy_sub(&y, &one);
    // R1 = x^2 y - x y + y - 1, S1 = x y - y + 1
    let r1 = zpoly::zxy_add(
        &zpoly::zxy_sub(&zpoly::zxy_mul(&x, &xy), &xy),
        &zpoly::zxy_sub(&y, &one),
    );
    let s1 = zpoly::zxy_add(&zpoly::zxy_sub(&xy, &y), &one);
    vec![x, y, xym1, xm1, ym1, r1, s1]
}

/// b, c and their common denominator E as polynomials in (x, y):
/// b = B/E, c = C/E, E = x^3 y (x y - 1)^2.
pub fn bce_xy() -> (Zxy, Zxy, Zxy) {
    let x = zpoly::zxy_monomial(BigInt::one(), 1, 0);
    let y = zpoly::zxy_monomial(BigInt::one(), 0, 1);
    let one = zpoly::zxy_const(1);
    let xy = zpoly::zxy_mul(&x, &y);
    let r1 = zpoly::zxy_add(
        &zpoly::zxy_sub(&zpoly::zxy_mul(&x, &xy), &xy),
        &zpoly::zxy_sub(&y, &one),
    );
    let r2 = zpoly::zxy_mul(&x, &zpoly::zxy_sub(&xy, &one));
    let s1 = zpoly::zxy_add(&zpoly::zxy_sub(&xy, &y), &one);
    let s2 = xy;
    let xm1 = zpoly::zxy_sub(&x, &one);
    let omy = zpoly::zxy_sub(&one, &y);
    let bnum = zpoly::zxy_mul(&zpoly::zxy_mul(&r1, &s1), &zpoly::zxy_mul(&xm1, &omy));
    let cnum = zpoly::zxy_mul(&zpoly::zxy_mul(&s1, &zpoly::zxy_mul(&xm1, &omy)), &r2);
    let e = zpoly::zxy_mul(&zpoly::zxy_mul(&r2, &r2), &s2);
    (bnum, cnum, e)
}

/// Junk factor base for the cleared sequence V_N in (x, y): pairwise coprime
/// polynomials covering coordinate degenerations, the discriminant, and the
/// exact-order components of the proper divisors of N.
pub fn factor_base(n: u32) -> Result<Vec<Zxy>> {
    let mut base = xy_atoms();
    fn push(base: &mut Vec<Zxy>, cand: &Zxy) {
        let mut rem = cand.clone();
        for m in base.iter() {
            rem = strip_gcd(&rem, m);
        }
        let rem = zpoly::zxy_normalize(&rem);
        if zpoly::zxy_deg_x(&rem) > 0 || zpoly::zxy_deg_y(&rem) > 0 {
            base.push(rem);
        }
    }
    let (bpoly, cpoly, e) = bce_xy();
    push(&mut base, &bpoly);
    push(&mut base, &cpoly);
    push(&mut base, &zpoly::zxy_sub(&bpoly, &cpoly));
    push(&mut base, &disc_quintic_xy(&bpoly, &cpoly, &e));
    for d in 4..n {
        if n % d != 0 {
            continue;
        }
        let fd = fn_as_xy_constraint(d)?;
        push(&mut base, &fd);
    }
    Ok(base)
}

/// f_d as a polynomial constraint in the (x, y) chart for any d >= 4: the
/// natural-chart polynomial pushed through the substitutions (numerator).
pub fn fn_as_xy_constraint(d: u32) -> Result<Zxy> {
    match natural_chart(d) {
        Chart::XY => fn_in_xy(d),
        Chart::RS => {
            let (_, frs) = fn_reduced_symbolic(d)?;
            let (r, s) = coords::rs_in_xy();
            Ok(zpoly::zxy_normalize(&coords::substitute(&frs, &r, &s).num))
        }
        Chart::BC => {
            let fbc = raw_order_polynomial(d)?;
            let (b, c) = coords::bc_in_xy();
            Ok(zpoly::zxy_normalize(&coords::substitute(&fbc, &b, &c).num))
        }
    }
}

/// f_N in the (x, y) chart for N >= 10. Uses the process-wide cache, the
/// symbolic route for small N, and evaluation-interpolation beyond.
pub fn fn_in_xy(n: u32) -> Result<Zxy> {
    assert!(n >= 10, "the (x,y) chart starts at N = 10");
    if let Some(f) = cache_get(n, Chart::XY) {
        return Ok(f);
    }
    let f = if n <= 13 {
        fn_reduced_symbolic(n)?.1
    } else {
        fn_xy_modular(n)?
    };
    cache_put(n, Chart::XY, f.clone());
    Ok(f)
}

/// Force a polynomial into the in-process cache (cache-file loader).
pub fn cache_insert(n: u32, chart: Chart, f: Zxy) {
    cache_put(n, chart, f);
}

pub fn cache_lookup(n: u32, chart: Chart) -> Option<Zxy> {
    cache_get(n, chart)
}

// ---- evaluation-interpolation route ----

struct JunkProfile {
    mults: Vec<u32>,
    deg_y: usize,
    deg_x: usize,
}

fn specialize_zxy(fp: &Fp, f: &Zxy, at: u64, direction_y: bool) -> Vec<u64> {
    if direction_y {
        let mut out: Vec<u64> = f
            .iter()
            .map(|cy| {
                let v = zpoly::zx_eval(cy, &BigInt::from(at));
                coords::from_bigint(fp, &v)
            })
            .collect();
        poly::trim(fp, &mut out);
        out
    } else {
        let mut out: Vec<u64> = vec![];
        let ye = fp.to_el(at % fp.modulus());
        let mut yj = fp.one();
        for cy in f.iter() {
            for (i, v) in cy.iter().enumerate() {
                if out.len() <= i {
                    out.resize(i + 1, 0);
                }
                let t = fp.mul(&coords::from_bigint(fp, v), &yj);
                out[i] = fp.add(&out[i], &t);
            }
            yj = fp.mul(&yj, &ye);
        }
        poly::trim(fp, &mut out);
        out
    }
}

/// One univariate specialization of V_N: strips the junk base, checks the
/// remaining core is squarefree of multiplicity one, and returns the
/// discovered multiplicities and the core degree.
fn specialized_profile(
    n: u32,
    fp: &Fp,
    base: &[Zxy],
    at: u64,
    direction_y: bool,
) -> Result<(Vec<u32>, usize)> {
    let pr = PolyRing { base: fp.clone() };
    let (bnum, cnum, e) = bce_xy();
    let ep = specialize_zxy(fp, &e, at, direction_y);
    let bp = specialize_zxy(fp, &bnum, at, direction_y);
    let cp = specialize_zxy(fp, &cnum, at, direction_y);
    if ep.is_empty() || bp.is_empty() {
        return Err(Error::Moduli("degenerate specialization".into()));
    }
    // V_2 = -E^2 B, V_3 = -E^5 B^3, V_4 = E^9 B^5 C
    let e2 = pr.mul(&ep, &ep);
    let v2 = pr.neg(&pr.mul(&e2, &bp));
    let e5 = pr.mul(&pr.mul(&e2, &e2), &ep);
    let b3 = pr.mul(&pr.mul(&bp, &bp), &bp);
    let v3 = pr.neg(&pr.mul(&e5, &b3));
    let e9 = pr.mul(&pr.mul(&e5, &e2), &e2);
    let b5 = pr.mul(&b3, &pr.mul(&bp, &bp));
    let v4 = pr.mul(&pr.mul(&e9, &b5), &cp);
    let mut eds = Eds::new(&pr, v2, v3, v4);
    let mut v = eds.get(n as u64);
    if v.is_empty() {
        return Err(Error::Moduli("V_N vanished; bad specialization".into()));
    }
    let mut mults = vec![0u32; base.len()];
    for (idx, j) in base.iter().enumerate() {
        let jp = specialize_zxy(fp, j, at, direction_y);
        if poly::deg(&jp) <= 0 {
            continue;
        }
        loop {
            let (q, r) = poly::divrem(fp, &v, &jp);
            if r.is_empty() && !q.is_empty() {
                v = q;
                mults[idx] += 1;
            } else {
                break;
            }
        }
    }
    let dv = poly::deriv(fp, &v);
    let g = poly::gcd(fp, &v, &dv);
    let core = poly::divrem(fp, &v, &g).0;
    let core_deg = poly::deg(&core);
    if core_deg <= 0 {
        return Err(Error::Moduli("no core left after stripping".into()));
    }
    let vd = poly::deg(&v);
    if vd != core_deg {
        return Err(Error::Moduli(format!(
            "order-{n} core is not multiplicity-free at this specialization"
        )));
    }
    Ok((mults, core_deg as usize))
}

/// Pointwise value of V_N at (x0, y0) over F_p via the scalar recurrence.
fn v_value(n: u32, fp: &Fp, bce: &(Zxy, Zxy, Zxy), x0: &u64, y0: &u64) -> u64 {
    let (bnum, cnum, e) = bce;
    let ev = coords::eval_zxy(fp, e, x0, y0);
    let bv = coords::eval_zxy(fp, bnum, x0, y0);
    let cv = coords::eval_zxy(fp, cnum, x0, y0);
    let e2 = fp.mul(&ev, &ev);
    let v2 = fp.neg(&fp.mul(&e2, &bv));
    let e5 = fp.mul(&fp.mul(&e2, &e2), &ev);
    let b3 = fp.mul(&fp.mul(&bv, &bv), &bv);
    let v3 = fp.neg(&fp.mul(&e5, &b3));
    let e9 = fp.mul(&fp.mul(&e5, &e2), &e2);
    let b5 = fp.mul(&b3, &fp.mul(&bv, &bv));
    let v4 = fp.mul(&fp.mul(&e9, &b5), &cv);
    let mut eds = Eds::new(fp, v2, v3, v4);
    eds.get(n as u64)
}

/// f_N mod p, normalized so the graded-lex leading coefficient is 1.
pub fn fn_xy_mod_p(n: u32, p: u64, base: &[Zxy]) -> Result<Vec<Vec<u64>>> {
    let fp = Fp::new(p)?;
    let mut profile: Option<JunkProfile> = None;
    let mut at = 2u64;
    while profile.is_none() && at < 60 {
        let ry = specialized_profile(n, &fp, base, at, true);
        let rx = specialized_profile(n, &fp, base, at + 1, false);
        if let (Ok((my, dy)), Ok((mx, dx))) = (ry, rx) {
            let mut mults = vec![0u32; base.len()];
            let mut consistent = true;
            for i in 0..base.len() {
                let in_y = zpoly::zxy_deg_y(&base[i]) > 0;
                let in_x = zpoly::zxy_deg_x(&base[i]) > 0;
                mults[i] = match (in_y, in_x) {
                    (true, true) => {
                        if my[i] != mx[i] {
                            consistent = false;
                        }
                        my[i]
                    }
                    (true, false) => my[i],
                    (false, true) => mx[i],
                    (false, false) => 0,
                };
            }
            if consistent {
                profile = Some(JunkProfile {
                    mults,
                    deg_y: dy,
                    deg_x: dx,
                });
            }
        }
        at += 2;
    }
    let profile = profile.ok_or_else(|| Error::Moduli("no usable specialization".into()))?;
    let bce = bce_xy();

    let bx = profile.deg_x;
    let by = profile.deg_y;
    let mut rows: Vec<(u64, Vec<u64>)> = vec![];
    let mut x0 = 2u64;
    while rows.len() < bx + 1 {
        x0 += 1;
        if x0 > 20_000 {
            return Err(Error::Moduli("grid exhausted".into()));
        }
        let xe = fp.to_el(x0);
        let mut xs: Vec<u64> = vec![];
        let mut ys: Vec<u64> = vec![];
        let mut y0 = 2u64;
        while xs.len() < by + 1 && y0 < 40_000 {
            y0 += 1;
            let ye = fp.to_el(y0);
            let mut junk = fp.one();
            let mut bad = false;
            for (j, m) in base.iter().zip(profile.mults.iter()) {
                if *m == 0 {
                    continue;
                }
                let v = coords::eval_zxy(&fp, j, &xe, &ye);
                if fp.is_zero(&v) {
                    bad = true;
                    break;
                }
                junk = fp.mul(&junk, &fp.pow_u64(&v, *m as u64));
            }
            if bad {
                continue;
            }
            let vv = v_value(n, &fp, &bce, &xe, &ye);
            let corrected = fp.mul(&vv, &fp.inv(&junk));
            xs.push(ye);
            ys.push(corrected);
        }
        if xs.len() < by + 1 {
            continue;
        }
        let row = poly::interpolate(&fp, &xs, &ys);
        if poly::deg(&row) > by as isize {
            return Err(Error::Moduli("row degree overflow".into()));
        }
        rows.push((x0, row));
    }
    let xs: Vec<u64> = rows.iter().map(|(x0, _)| fp.to_el(*x0)).collect();
    let mut out: Vec<Vec<u64>> = vec![];
    for j in 0..=by {
        let ys: Vec<u64> = rows
            .iter()
            .map(|(_, row)| row.get(j).cloned().unwrap_or(0))
            .collect();
        let cj = poly::interpolate(&fp, &xs, &ys);
        if poly::deg(&cj) > bx as isize {
            return Err(Error::Moduli("column degree overflow".into()));
        }
        out.push(cj);
    }
    // normalize by the graded-lex leading coefficient
    let mut lead: Option<(usize, usize)> = None;
    for (j, cy) in out.iter().enumerate() {
        for (i, v) in cy.iter().enumerate() {
            if *v != 0 {
                let better = match lead {
                    None => true,
                    Some((bi, bj)) => (i + j, i) > (bi + bj, bi),
                };
                if better {
                    lead = Some((i, j));
                }
            }
        }
    }
    let (li, lj) = lead.ok_or_else(|| Error::Moduli("interpolated zero".into()))?;
    let inv = fp.inv(&out[lj][li]);
    for cy in out.iter_mut() {
        for v in cy.iter_mut() {
            *v = fp.mul(v, &inv);
        }
    }
    Ok(out)
}

/// f_N in (x, y) by evaluation-interpolation over several primes plus
/// rational reconstruction, verified by the exact-order oracle.
pub fn fn_xy_modular(n: u32) -> Result<Zxy> {
    let base = factor_base(n)?;
    let mut p = (1u64 << 59) + 7;
    let mut residues: Vec<(u64, Vec<Vec<u64>>)> = vec![];
    let mut stable: Option<Zxy> = None;
    for _round in 0..12 {
        p = next_prime_u64(p + 2);
        let fhat = fn_xy_mod_p(n, p, &base)?;
        residues.push((p, fhat));
        if residues.len() < 2 {
            continue;
        }
        if let Some(f) = reconstruct_from_residues(&residues)? {
            if let Some(prev) = &stable {
                if *prev == f {
                    verify_order_oracle(n, &f, 3)?;
                    return Ok(f);
                }
            }
            stable = Some(f);
        }
    }
    Err(Error::Moduli(format!(
        "f_{n} reconstruction did not stabilize over {} primes",
        residues.len()
    )))
}

fn reconstruct_from_residues(residues: &[(u64, Vec<Vec<u64>>)]) -> Result<Option<Zxy>> {
    let by = residues.iter().map(|(_, f)| f.len()).max().unwrap_or(0);
    let mut denlcm = BigInt::one();
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
        let mut row: Zx = vec![];
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

/// Exact-order oracle: sample points of f_N = 0 over a fresh prime field,
/// map to (b, c), and verify that (0,0) has order exactly N by scalar
/// multiplication.
pub fn verify_order_oracle(n: u32, f: &Zxy, trials: usize) -> Result<()> {
    let fq = crate::algebra::Fq::new(1_000_003, 1)?;
    let fp = fq.base().clone();
    let mut done = 0usize;
    let mut x0 = 5u64;
    while done < trials {
        x0 += 1;
        if x0 > 500 {
            return Err(Error::Moduli(format!(
                "order oracle found too few points for N={n}"
            )));
        }
        let spec = specialize_zxy(&fp, f, x0, true);
        if poly::deg(&spec) < 1 {
            continue;
        }
        let specq: Vec<Vec<u64>> = spec.iter().map(|c| fq.from_base(*c)).collect();
        let roots = crate::algebra::factor::roots(&fq, &specq, 11);
        for root in roots {
            let y0 = fq.to_base(&root);
            let x = fp.to_el(x0);
            let bc = coords::point_xy_to_bc(&fp, &x, &y0);
            let (b, c) = match bc {
                None => continue,
                Some(v) => v,
            };
            let disc = super::tate_discriminant(&fp, &b, &c);
            if fp.is_zero(&disc) {
                continue;
            }
            let curve = super::TateCurve { b, c };
            match super::marked_point_order(&fp, &curve, (n + 1) as u64) {
                Some(ord) if ord == n as u64 => {
                    done += 1;
                    if done >= trials {
                        return Ok(());
                    }
                }
                other => {
                    return Err(Error::Moduli(format!(
                        "order oracle failed for N={n}: got {other:?}"
                    )));
                }
            }
        }
    }
    Ok(())
}

// ---- cache file ----

/// Serialize one polynomial as the sparse line format
/// `N|chart|coef:expX:expY;...`.
pub fn cache_line(n: u32, chart: Chart, f: &Zxy) -> String {
    let mut parts: Vec<String> = vec![];
    for (j, cy) in f.iter().enumerate() {
        for (i, v) in cy.iter().enumerate() {
            if !v.is_zero() {
                parts.push(format!("{v}:{i}:{j}"));
            }
        }
    }
    format!("{}|{}|{}", n, chart.tag(), parts.join(";"))
}

pub fn parse_cache_line(line: &str) -> Result<(u32, Chart, Zxy)> {
    let mut it = line.trim().split('|');
    let n: u32 = it
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Validation("bad cache line: level".into()))?;
    let chart = it
        .next()
        .and_then(Chart::from_tag)
        .ok_or_else(|| Error::Validation("bad cache line: chart".into()))?;
    let body = it
        .next()
        .ok_or_else(|| Error::Validation("bad cache line: body".into()))?;
    let mut f: Zxy = vec![];
    for mono in body.split(';') {
        if mono.is_empty() {
            continue;
        }
        let mut parts = mono.split(':');
        let c: BigInt = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Validation("bad monomial coefficient".into()))?;
        let i: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Validation("bad x exponent".into()))?;
        let j: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Validation("bad y exponent".into()))?;
        let term = zpoly::zxy_monomial(c, i, j);
        f = zpoly::zxy_add(&f, &term);
    }
    Ok((n, chart, f))
}

/// Load cached polynomials from a cache file into the process cache.
pub fn load_cache_file(path: &std::path::Path) -> Result<usize> {
    let text = std::fs::read_to_string(path)?;
    let mut count = 0;
    for line in text.lines() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (n, chart, f) = parse_cache_line(line)?;
        cache_put(n, chart, f);
        count += 1;
    }
    Ok(count)
}

/// The quintic factor of the discriminant numerator in (x, y):
/// disc = b^3 Q(b,c) with Q = 16 b^2 + (1 - 20c - 8c^2) b + c (c-1)^3, so the
/// cleared numerator of Q is 16 B^2 E^2 + (E^2 - 20CE - 8C^2) B E + C (C-E)^3.
fn disc_quintic_xy(bp: &Zxy, cp: &Zxy, e: &Zxy) -> Zxy {
    let e2 = zpoly::zxy_mul(e, e);
    let b2 = zpoly::zxy_mul(bp, bp);
    let t1 = zpoly::zxy_mul(&zpoly::zxy_const(16), &zpoly::zxy_mul(&b2, &e2));
    let mid = zpoly::zxy_sub(
        &zpoly::zxy_sub(&e2, &zpoly::zxy_mul(&zpoly::zxy_const(20), &zpoly::zxy_mul(cp, e))),
        &zpoly::zxy_mul(&zpoly::zxy_const(8), &zpoly::zxy_mul(cp, cp)),
    );
    let t2 = zpoly::zxy_mul(&mid, &zpoly::zxy_mul(bp, e));
    let cme = zpoly::zxy_sub(cp, e);
    let cme3 = zpoly::zxy_mul(&zpoly::zxy_mul(&cme, &cme), &cme);
    let t3 = zpoly::zxy_mul(cp, &cme3);
    zpoly::zxy_add(&zpoly::zxy_add(&t1, &t2), &t3)
}

/// The unit f_k as a fraction in the (x, y) chart. Defined for k >= 2:
/// f_2 = b^4 / disc, f_3 = b, f_4 = c, f_5 = b - c, f_6..f_9 through the
/// (r, s) chart, and f_k the curve polynomial itself for k >= 10.
pub fn unit_fraction_xy(k: u32) -> Result<BiFrac> {
    let (b, c) = coords::bc_in_xy();
    match k {
        2 => {
            // b^4 / disc = B E^3 / Q_num with disc = b^3 Q, Q_num = E^7 Q / E^4
            let (bp, cp, e) = bce_xy();
            let q = disc_quintic_xy(&bp, &cp, &e);
            let e3 = zpoly::zxy_mul(&zpoly::zxy_mul(&e, &e), &e);
            Ok(BiFrac {
                num: zpoly::zxy_mul(&bp, &e3),
                den: q,
            })
        }
        3 => Ok(b),
        4 => Ok(c),
        5 => Ok(b.sub(&c)),
        6..=9 => {
            let (_, frs) = fn_reduced_symbolic(k)?;
            let (r, s) = coords::rs_in_xy();
            Ok(coords::substitute(&frs, &r, &s))
        }
        k if k >= 10 => Ok(BiFrac::from_poly(fn_in_xy(k)?)),
        _ => Err(Error::Moduli(format!("no unit f_{k}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(c: i64, i: usize, j: usize) -> Zxy {
        zpoly::zxy_monomial(BigInt::from(c), i, j)
    }

    #[test]
    fn f4_and_f5_in_bc() {
        // F_4 = c (y slot), F_5 = b - c
        let f4 = raw_order_polynomial(4).unwrap();
        assert_eq!(f4, mono(1, 0, 1));
        let f5 = raw_order_polynomial(5).unwrap();
        assert_eq!(f5, zpoly::zxy_sub(&mono(1, 1, 0), &mono(1, 0, 1)));
    }

    #[test]
    fn low_order_levels_rejected() {
        assert!(raw_order_polynomial(3).is_err());
    }

    #[test]
    fn f6_through_f9_in_rs() {
        // f_6 = s-1, f_7 = s-r, f_8 = rs-2r+1, f_9 = s^2-s-r+1
        let (ch, f6) = fn_reduced_symbolic(6).unwrap();
        assert_eq!(ch, Chart::RS);
        assert_eq!(f6, zpoly::zxy_sub(&mono(1, 0, 1), &zpoly::zxy_const(1)));
        let f7 = fn_reduced_symbolic(7).unwrap().1;
        assert_eq!(f7, zpoly::zxy_sub(&mono(1, 0, 1), &mono(1, 1, 0)));
        let f8 = fn_reduced_symbolic(8).unwrap().1;
        let expect8 = zpoly::zxy_add(
            &zpoly::zxy_sub(&mono(1, 1, 1), &mono(2, 1, 0)),
            &zpoly::zxy_const(1),
        );
        assert_eq!(f8, expect8);
        let f9 = fn_reduced_symbolic(9).unwrap().1;
        let expect9 = zpoly::zxy_add(
            &zpoly::zxy_sub(
                &zpoly::zxy_sub(&mono(1, 0, 2), &mono(1, 0, 1)),
                &mono(1, 1, 0),
            ),
            &zpoly::zxy_const(1),
        );
        assert_eq!(f9, expect9);
    }

    #[test]
    fn f10_f11_in_xy() {
        // f_10 = x - y + 1, f_11 = x^2 y - x y^2 + y - 1
        let f10 = fn_reduced_symbolic(10).unwrap().1;
        let expect10 = zpoly::zxy_add(
            &zpoly::zxy_sub(&mono(1, 1, 0), &mono(1, 0, 1)),
            &zpoly::zxy_const(1),
        );
        assert_eq!(f10, expect10);
        let f11 = fn_reduced_symbolic(11).unwrap().1;
        let expect11 = zpoly::zxy_sub(
            &zpoly::zxy_add(&zpoly::zxy_sub(&mono(1, 2, 1), &mono(1, 1, 2)), &mono(1, 0, 1)),
            &zpoly::zxy_const(1),
        );
        assert_eq!(f11, expect11);
    }

    #[test]
    fn f11_random_point_has_order_11() {
        let f11 = fn_in_xy(11).unwrap();
        verify_order_oracle(11, &f11, 3).unwrap();
    }

    #[test]
    fn modular_route_agrees_with_symbolic() {
        let sym12 = fn_reduced_symbolic(12).unwrap().1;
        let mod12 = fn_xy_modular(12).unwrap();
        assert_eq!(sym12, mod12);
        let sym13 = fn_reduced_symbolic(13).unwrap().1;
        let mod13 = fn_xy_modular(13).unwrap();
        assert_eq!(sym13, mod13);
    }

    #[test]
    fn cache_line_roundtrip() {
        let f = fn_reduced_symbolic(10).unwrap().1;
        let line = cache_line(10, Chart::XY, &f);
        let (n, ch, g) = parse_cache_line(&line).unwrap();
        assert_eq!((n, ch), (10, Chart::XY));
        assert_eq!(f, g);
    }
}
