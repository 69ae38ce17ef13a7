//! Places of the function field F_q(x)[y]/(f) of a plane curve, realized as
//! Puiseux-type branch parametrizations.
//!
//! A place is a branch of the curve at a center x0 (or x = infinity),
//! normalized so that x = x0 + t^e exactly (x = t^{-e} at infinity) with the
//! y-coordinate a Laurent series in t over the residue field. Conjugate
//! branches over F_q are represented once, by a canonical representative;
//! the residue degree weights all divisor arithmetic.

use crate::algebra::fq::{Fq, FqEmbed};
use crate::algebra::ring::{Field, Ring};
use crate::algebra::series::{Series, SeriesField};
use crate::algebra::{factor, poly};
use crate::error::{Error, Result};
use std::rc::Rc;

pub type El = Vec<u64>;
pub type BiPoly = Vec<Vec<El>>; // y-major rows of x-polynomials

/// Where a place sits on the x-line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CenterKey {
    /// lifted encoding of the monic irreducible x-minimal polynomial
    Finite(Vec<Vec<u64>>),
    Infinity,
}

#[derive(Clone, Debug)]
pub struct PlaceData {
    pub center: CenterKey,
    pub branch_index: usize,
    /// residue field of the place (canonical extension of the curve field)
    pub field: Fq,
    /// residue degree over the curve base field
    pub deg: usize,
    /// ramification: x - x0 = t^ram (or 1/x = t^ram at infinity)
    pub ram: usize,
    /// x0 in `field` for finite centers
    pub x0: Option<El>,
    /// y(t) over `field`
    pub y_series: Series<El>,
}

#[derive(Clone, Debug)]
pub struct Place(pub Rc<PlaceData>);

impl PartialEq for Place {
    fn eq(&self, other: &Self) -> bool {
        self.0.center == other.0.center && self.0.branch_index == other.0.branch_index
    }
}
impl Eq for Place {}

impl Place {
    pub fn key(&self) -> (CenterKey, usize) {
        (self.0.center.clone(), self.0.branch_index)
    }
    pub fn deg(&self) -> usize {
        self.0.deg
    }
}

/// Branch of f at a fixed finite center, over some extension field.
struct RawBranch {
    field: Fq,
    ram: usize,
    y_series: Series<El>,
}

/// All branches of f(s, y) (bivariate over `k`) along s -> 0, i.e. the
/// Puiseux expansions y(t) with s = t^e. `f` must not be divisible by s and
/// must have positive y-degree. Branches with y -> infinity are included via
/// the reciprocal transform. `prec` is the t-precision of the output series.
fn branches_at_zero(k: &Fq, f: &BiPoly, prec: usize) -> Result<Vec<RawBranch>> {
    let mut out = vec![];
    // finite-y branches: for each root eta of f(0, y), shift and expand
    let f0: Vec<El> = {
        let mut v: Vec<El> = f
            .iter()
            .map(|row| row.first().cloned().unwrap_or_else(|| k.zero()))
            .collect();
        poly::trim(k, &mut v);
        v
    };
    if poly::is_zero(&f0) {
        return Err(Error::FunctionField("curve contains a vertical line".into()));
    }
    for (ext, emb, roots) in roots_by_extension(k, &f0)? {
        let fe = embed_bipoly(&emb, f);
        for eta in orbit_representatives(&ext, k.degree(), roots) {
            let shifted = shift_y(&ext, &fe, &eta);
            for b in branches_through_origin(&ext, &shifted, prec)? {
                // add eta back: y = eta + series
                let sf = SeriesField::new(b.field.clone(), prec);
                let eta_b = if b.field.degree() == ext.degree() {
                    eta.clone()
                } else {
                    FqEmbed::new(&ext, &b.field)?.map(&eta)
                };
                let total = sf.add(&b.y_series, &sf.monomial(eta_b, 0));
                out.push(RawBranch {
                    field: b.field,
                    ram: b.ram,
                    y_series: total,
                });
            }
        }
    }
    // infinite-y branches: w = 1/y, branches of w -> 0
    let n = f.len() - 1;
    let lc: Vec<El> = {
        let mut v = f.last().cloned().unwrap_or_default();
        poly::trim(k, &mut v);
        v
    };
    let lc_at_0 = lc.first().cloned().unwrap_or_else(|| k.zero());
    if k.is_zero(&lc_at_0) {
        // reciprocal polynomial: w^n f(s, 1/w)
        let mut rec: BiPoly = vec![vec![]; n + 1];
        for (j, row) in f.iter().enumerate() {
            rec[n - j] = row.clone();
        }
        while rec.last().map_or(false, |r| r.is_empty()) {
            rec.pop();
        }
        // only branches with w(0) = 0
        let shifted = rec; // w -> 0 means no shift
        for b in branches_through_origin(k, &shifted, prec + 2 * n * prec_margin())? {
            let sf = SeriesField::new(b.field.clone(), prec + 2 * n * prec_margin());
            let y = sf
                .try_inv(&b.y_series)
                .ok_or_else(|| Error::FunctionField("zero reciprocal branch".into()))?;
            out.push(RawBranch {
                field: b.field,
                ram: b.ram,
                y_series: y,
            });
        }
    }
    Ok(out)
}

fn prec_margin() -> usize {
    2
}

/// Branches with y(0) = 0 of a bivariate f over k with f(0,0) = 0 and
/// f(0, y) not identically 0, via the Newton polygon.
fn branches_through_origin(k: &Fq, f: &BiPoly, prec: usize) -> Result<Vec<RawBranch>> {
    // support points (i, j): coefficient of s^i y^j
    let mut support = vec![];
    for (j, row) in f.iter().enumerate() {
        for (i, c) in row.iter().enumerate() {
            if !k.is_zero(c) {
                support.push((i as i64, j as i64));
            }
        }
    }
    if support.is_empty() {
        return Err(Error::FunctionField("zero polynomial in branch expansion".into()));
    }
    // the y-adic order of f(0, y): branches exist iff f(0, 0) = 0
    let ord0 = support
        .iter()
        .filter(|(i, _)| *i == 0)
        .map(|(_, j)| *j)
        .min();
    match ord0 {
        None => {
            return Err(Error::FunctionField("s divides f".into()));
        }
        Some(0) => return Ok(vec![]), // no branch through the origin
        Some(_) => {}
    }
    // lower Newton polygon edges between the y-axis point (0, ord0) side and
    // the s-axis: consider hull of points minimizing i for each j
    let mut out = vec![];
    for (e, q, edge_poly) in newton_edges(k, f, &support) {
        // roots c != 0 of the edge polynomial
        for (ext, emb, roots) in roots_by_extension(k, &edge_poly)? {
            let fe = embed_bipoly(&emb, f);
            for c in orbit_representatives(&ext, k.degree(), roots) {
                if ext.is_zero(&c) {
                    continue;
                }
                // substitute s = t^e, y = t^q (c + y'), divide by t^w
                let g = edge_substitute(&ext, &fe, e, q, &c);
                // recurse: branches of g with y' -> 0, in parameter t
                let sub = branches_through_origin_rec(&ext, &g, prec, 0)?;
                for b in sub {
                    // y(t) = t^q (c + y'(t)); note t already absorbed e
                    let sf = SeriesField::new(b.field.clone(), prec + q as usize + 4);
                    let cb = if b.field.degree() == ext.degree() {
                        c.clone()
                    } else {
                        FqEmbed::new(&ext, &b.field)?.map(&c)
                    };
                    let inner = sf.add(&b.y_series, &sf.monomial(cb, 0));
                    let y = sf.mul(&sf.monomial(b.field.one(), q), &inner);
                    out.push(RawBranch {
                        field: b.field,
                        ram: e as usize * b.ram,
                        y_series: y,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// After the first edge substitution the remaining expansion is computed by
/// further Newton steps; once the root is simple the series is completed by
/// direct undetermined-coefficients lifting.
fn branches_through_origin_rec(k: &Fq, f: &BiPoly, prec: usize, depth: usize) -> Result<Vec<RawBranch>> {
    if depth > 80 {
        return Err(Error::FunctionField("Puiseux recursion too deep".into()));
    }
    // f(0, 0) must be 0 here? f was divided by t^w, and y' = 0 corresponds to
    // the chosen root: f(0, y') has y' = 0 as a root of some multiplicity m.
    let f0: Vec<El> = {
        let mut v: Vec<El> = f
            .iter()
            .map(|row| row.first().cloned().unwrap_or_else(|| k.zero()))
            .collect();
        poly::trim(k, &mut v);
        v
    };
    if poly::is_zero(&f0) {
        return Err(Error::FunctionField("t divides the edge transform".into()));
    }
    let mult_zero = f0.iter().take_while(|c| k.is_zero(c)).count();
    if mult_zero == 0 {
        return Ok(vec![]); // y' = 0 not on the fiber: no continuation here
    }
    if mult_zero == 1 {
        // simple root: unique branch, lift by undetermined coefficients
        let y = hensel_series_lift(k, f, prec)?;
        return Ok(vec![RawBranch {
            field: k.clone(),
            ram: 1,
            y_series: y,
        }]);
    }
    // still singular: take Newton edges again
    let mut support = vec![];
    for (j, row) in f.iter().enumerate() {
        for (i, c) in row.iter().enumerate() {
            if !k.is_zero(c) {
                support.push((i as i64, j as i64));
            }
        }
    }
    let mut out = vec![];
    for (e, q, edge_poly) in newton_edges(k, f, &support) {
        for (ext, emb, roots) in roots_by_extension(k, &edge_poly)? {
            let fe = embed_bipoly(&emb, f);
            for c in orbit_representatives(&ext, k.degree(), roots) {
                if ext.is_zero(&c) {
                    continue;
                }
                let g = edge_substitute(&ext, &fe, e, q, &c);
                let sub = branches_through_origin_rec(&ext, &g, prec, depth + 1)?;
                for b in sub {
                    let sf = SeriesField::new(b.field.clone(), prec + q as usize + 4);
                    let cb = if b.field.degree() == ext.degree() {
                        c.clone()
                    } else {
                        FqEmbed::new(&ext, &b.field)?.map(&c)
                    };
                    let inner = sf.add(&b.y_series, &sf.monomial(cb, 0));
                    let y = sf.mul(&sf.monomial(b.field.one(), q), &inner);
                    out.push(RawBranch {
                        field: b.field,
                        ram: e as usize * b.ram,
                        y_series: y,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Lower Newton polygon edges with positive slope parameters: returns
/// (e, q, edge polynomial) per edge, where the edge has slope -q/e in the
/// (i, j) plane, gcd(q, e) = 1, and the edge polynomial is
/// sum over edge points of a_{ij} c^{(j - j_min)/e}.
fn newton_edges(k: &Fq, f: &BiPoly, support: &[(i64, i64)]) -> Vec<(i64, i64, Vec<El>)> {
    // lower-left hull: from the point with smallest j on the i = min side...
    // Take the lower convex hull of the support viewed with x-axis = j
    // (y-power) and y-axis = i (s-power); edges with j increasing and i
    // decreasing describe y(s) -> 0 branches.
    let mut pts: Vec<(i64, i64)> = support.to_vec();
    pts.sort();
    // for each j keep minimal i
    let mut min_i: std::collections::BTreeMap<i64, i64> = Default::default();
    for (i, j) in pts {
        min_i
            .entry(j)
            .and_modify(|v| {
                if i < *v {
                    *v = i;
                }
            })
            .or_insert(i);
    }
    let pts: Vec<(i64, i64)> = min_i.iter().map(|(j, i)| (*j, *i)).collect(); // (j, i)
    // lower hull over increasing j with decreasing i portion
    let mut hull: Vec<(i64, i64)> = vec![];
    for p in pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // keep turn right (convex from below)
            if (b.0 - a.0) * (p.1 - a.1) - (p.0 - a.0) * (b.1 - a.1) <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = vec![];
    for w in hull.windows(2) {
        let (j0, i0) = w[0];
        let (j1, i1) = w[1];
        if i1 >= i0 {
            continue; // only strictly falling edges describe y -> 0
        }
        let dj = j1 - j0;
        let di = i0 - i1;
        let g = num_integer::gcd(dj, di);
        let e = dj / g;
        let q = di / g;
        // edge polynomial in c: sum over support points on this edge
        let mut poly_c: Vec<El> = vec![];
        for (j, row) in f.iter().enumerate() {
            for (i, cf) in row.iter().enumerate() {
                if k.is_zero(cf) {
                    continue;
                }
                let (i, j) = (i as i64, j as i64);
                // on segment between (j0, i0) and (j1, i1)?
                if j < j0 || j > j1 {
                    continue;
                }
                if (i - i0) * (j1 - j0) != (j - j0) * (i1 - i0) {
                    continue;
                }
                let kdx = ((j - j0) / e) as usize;
                if poly_c.len() <= kdx {
                    poly_c.resize(kdx + 1, k.zero());
                }
                poly_c[kdx] = k.add(&poly_c[kdx], cf);
            }
        }
        poly::trim(k, &mut poly_c);
        out.push((e, q, poly_c));
    }
    out
}

/// Substitute s = t^e, y = t^q (c + y') and divide by the edge valuation.
fn edge_substitute(k: &Fq, f: &BiPoly, e: i64, q: i64, c: &El) -> BiPoly {
    // term a s^i y^j -> a t^{e i + q j} (c + y')^j
    // collect as polynomial in y' with t-polynomial coefficients.
    let mut terms: Vec<Vec<El>> = vec![]; // [y'^j][t-power]
    let mut minval = i64::MAX;
    // first pass: min valuation
    for (j, row) in f.iter().enumerate() {
        for (i, cf) in row.iter().enumerate() {
            if !k.is_zero(cf) {
                minval = minval.min(e * i as i64 + q * j as i64);
            }
        }
    }
    for (j, row) in f.iter().enumerate() {
        // (c + y')^j expansion: binomial with powers of c
        // precompute binomials progressively below
        for (i, cf) in row.iter().enumerate() {
            if k.is_zero(cf) {
                continue;
            }
            let tpow = (e * i as i64 + q * j as i64 - minval) as usize;
            // add cf * t^tpow * (c + y')^j
            let mut cpow = k.one();
            let mut binom: u128 = 1;
            for m in 0..=j {
                // coefficient of y'^m: C(j, m) c^{j-m}
                if m > 0 {
                    binom = binom * (j - m + 1) as u128 / m as u128;
                }
                let coef = k.mul(
                    cf,
                    &k.mul(
                        &k.from_i64((binom % (1 << 63)) as i64),
                        &pow_el(k, c, (j - m) as u64),
                    ),
                );
                let _ = &mut cpow;
                if terms.len() <= m {
                    terms.resize(m + 1, vec![]);
                }
                let row_m = &mut terms[m];
                let tp = tpow + q as usize * m;
                if row_m.len() <= tp {
                    row_m.resize(tp + 1, k.zero());
                }
                row_m[tp] = k.add(&row_m[tp], &coef);
            }
        }
    }
    for row in terms.iter_mut() {
        while row.last().map_or(false, |c| k.is_zero(c)) {
            row.pop();
        }
    }
    while terms.last().map_or(false, |r| r.is_empty()) {
        terms.pop();
    }
    terms
}

fn pow_el(k: &Fq, a: &El, e: u64) -> El {
    k.pow_u64(a, e)
}

/// Simple-root series lifting: f(t, y) with f(0,0) = 0, f_y(0,0) != 0:
/// the unique series y(t) = sum_{k>=1} c_k t^k with f(t, y(t)) = 0,
/// determined order by order from the residual.
fn hensel_series_lift(k: &Fq, f: &BiPoly, prec: usize) -> Result<Series<El>> {
    let prec = prec.max(4);
    let sf = SeriesField::new(k.clone(), prec);
    let fy0 = {
        // f_y(0, 0)
        let row1 = f.get(1).cloned().unwrap_or_default();
        row1.first().cloned().unwrap_or_else(|| k.zero())
    };
    let inv = k
        .try_inv(&fy0)
        .ok_or_else(|| Error::FunctionField("vanishing derivative during lift".into()))?;
    let mut coeffs: Vec<El> = vec![k.zero(); prec];
    for step in 1..prec {
        let y = sf.from_coeffs(0, coeffs[..=step.min(prec - 1)].to_vec());
        let resid = eval_bipoly_series(&sf, f, &y);
        let rk = resid.coeff_of(k, step as i64);
        if k.is_zero(&rk) {
            continue;
        }
        coeffs[step] = k.neg(&k.mul(&rk, &inv));
    }
    Ok(sf.from_coeffs(0, coeffs))
}

/// Evaluate a bivariate (rows over the s/t variable) at (t, y(t)).
pub fn eval_bipoly_series<'a>(
    sf: &SeriesField<Fq>,
    f: &BiPoly,
    y: &Series<El>,
) -> Series<El> {
    let mut acc = sf.zero();
    for row in f.iter().rev() {
        acc = sf.mul(&acc, y);
        // row is a t-polynomial: to series
        let mut rowv: Vec<El> = row.clone();
        while rowv.last().map_or(false, |c| sf.base.is_zero(c)) {
            rowv.pop();
        }
        let rows = sf.from_coeffs(0, rowv);
        acc = sf.add(&acc, &rows);
    }
    acc
}

/// One root per irreducible factor, canonically chosen (all roots are
/// produced; representatives are the orbit minima under the Frobenius of the
/// base of degree `base_deg`).
fn orbit_representatives(ext: &Fq, base_deg: usize, mut roots: Vec<El>) -> Vec<El> {
    roots.sort_by_key(|r| ext.lift(r));
    let mut reps: Vec<El> = vec![];
    let mut seen: Vec<El> = vec![];
    for r in roots {
        if seen.contains(&r) {
            continue;
        }
        // orbit under x -> x^(p^base_deg)
        let mut orb = vec![r.clone()];
        let mut cur = ext.frob(&r, base_deg);
        while cur != r {
            orb.push(cur.clone());
            cur = ext.frob(&cur, base_deg);
        }
        seen.extend(orb);
        reps.push(r);
    }
    reps
}

/// Roots of every irreducible factor, grouped by the needed extension.
pub fn roots_by_extension(k: &Fq, f: &[El]) -> Result<Vec<(Fq, FqEmbed, Vec<El>)>> {
    let monic = poly::monic(k, f);
    if poly::deg(&monic) < 1 {
        return Ok(vec![]);
    }
    let df = poly::deriv(k, &monic);
    let sf = if poly::is_zero(&df) {
        monic.clone()
    } else {
        let g = poly::gcd(k, &monic, &df);
        poly::divrem(k, &monic, &g).0
    };
    let mut out = vec![];
    for (part, e) in factor::distinct_degree(k, &sf) {
        if poly::deg(&part) < 1 {
            continue;
        }
        let ext = Fq::new(k.p(), k.degree() * e)?;
        let emb = FqEmbed::new(k, &ext)?;
        let lifted: Vec<El> = part.iter().map(|c| emb.map(c)).collect();
        let roots = factor::roots(&ext, &lifted, 0x9a11);
        if roots.len() != poly::deg(&part) as usize {
            return Err(Error::FunctionField("part failed to split".into()));
        }
        out.push((ext, emb, roots));
    }
    Ok(out)
}

fn embed_bipoly(emb: &FqEmbed, f: &BiPoly) -> BiPoly {
    f.iter()
        .map(|row| row.iter().map(|c| emb.map(c)).collect())
        .collect()
}

fn shift_y(k: &Fq, f: &BiPoly, eta: &El) -> BiPoly {
    // f(s, y + eta) by Horner in y
    let mut out: BiPoly = vec![];
    for row in f.iter().rev() {
        // out = out * (y + eta) + row
        let mut next: BiPoly = vec![vec![]; out.len() + 1];
        for (j, r) in out.iter().enumerate() {
            next[j + 1] = poly::add(k, &next[j + 1], r);
            let scaled: Vec<El> = r.iter().map(|c| k.mul(c, eta)).collect();
            next[j] = poly::add(k, &next[j], &scaled);
        }
        next[0] = poly::add(k, &next[0], row);
        while next.last().map_or(false, |r| r.is_empty()) {
            next.pop();
        }
        out = next;
    }
    out
}

/// Enumerate the places of the curve above a finite x-center given by a
/// monic irreducible polynomial over the curve's field, at t-precision prec.
pub fn places_above_finite(
    fq: &Fq,
    f: &BiPoly,
    minpoly: &[El],
    prec: usize,
) -> Result<Vec<PlaceData>> {
    let d = poly::deg(minpoly) as usize;
    let kx = Fq::new(fq.p(), fq.degree() * d)?;
    let emb = FqEmbed::new(fq, &kx)?;
    let x0 = {
        let lifted: Vec<El> = minpoly.iter().map(|c| emb.map(c)).collect();
        let mut roots = factor::roots(&kx, &lifted, 0x9a11);
        roots.sort_by_key(|r| kx.lift(r));
        roots
            .into_iter()
            .next()
            .ok_or_else(|| Error::FunctionField("center has no root".into()))?
    };
    // f(x0 + s, y)
    let fk = embed_bipoly(&emb, f);
    let shifted: BiPoly = fk
        .iter()
        .map(|row| taylor_shift_fq(&kx, row, &x0))
        .collect();
    let mut branches = branches_at_zero(&kx, &shifted, prec)?;
    // canonical order: by (deg, ram, lifted series fingerprint)
    branches.sort_by_key(|b| branch_sort_key(b));
    let key = CenterKey::Finite(minpoly.iter().map(|c| fq.lift(c)).collect());
    let mut out = vec![];
    for (i, b) in branches.into_iter().enumerate() {
        let deg = b.field.degree() / fq.degree();
        out.push(PlaceData {
            center: key.clone(),
            branch_index: i,
            field: b.field,
            deg,
            ram: b.ram,
            x0: Some(x0.clone()),
            y_series: b.y_series,
        });
    }
    Ok(out)
}

/// Places above x = infinity: chart u = 1/x, f_inf(u, y) = u^a f(1/u, y).
pub fn places_above_infinity(fq: &Fq, f: &BiPoly, prec: usize) -> Result<Vec<PlaceData>> {
    let a = f
        .iter()
        .map(|r| r.len() as isize - 1)
        .max()
        .unwrap_or(-1)
        .max(0) as usize;
    let finf: BiPoly = f
        .iter()
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
        .collect();
    // strip u-content if any (curve through the whole line at infinity is
    // impossible for the irreducible models used here)
    let mut branches = branches_at_zero(fq, &finf, prec)?;
    branches.sort_by_key(|b| branch_sort_key(b));
    let mut out = vec![];
    for (i, b) in branches.into_iter().enumerate() {
        let deg = b.field.degree() / fq.degree();
        out.push(PlaceData {
            center: CenterKey::Infinity,
            branch_index: i,
            field: b.field,
            deg,
            ram: b.ram,
            x0: None,
            y_series: b.y_series,
        });
    }
    Ok(out)
}

fn branch_sort_key(b: &RawBranch) -> (usize, usize, Vec<(i64, Vec<u64>)>) {
    let fp = |s: &Series<El>| -> Vec<(i64, Vec<u64>)> {
        s.coeffs
            .iter()
            .take(8)
            .enumerate()
            .map(|(i, c)| (s.val + i as i64, b.field.lift(c)))
            .collect()
    };
    (b.field.degree(), b.ram, fp(&b.y_series))
}

fn taylor_shift_fq(k: &Fq, f: &[El], a: &El) -> Vec<El> {
    let mut out: Vec<El> = vec![];
    for c in f.iter().rev() {
        let mut next = vec![k.zero(); out.len() + 1];
        for (i, v) in out.iter().enumerate() {
            next[i + 1] = k.add(&next[i + 1], v);
            let t = k.mul(v, a);
            next[i] = k.add(&next[i], &t);
        }
        next[0] = k.add(&next[0], c);
        while next.last().map_or(false, |c| k.is_zero(c)) {
            next.pop();
        }
        out = next;
    }
    out
}
