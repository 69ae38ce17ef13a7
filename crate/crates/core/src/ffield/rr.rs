//! Riemann-Roch spaces by linear-algebra interpolation on the plane model.
//!
//! L(D) is computed inside the ansatz space
//!     G = A(x, y) / d(x),   deg_y A < n,
//! where d(x) collects the centers of the poles of D together with the
//! singular-locus slack of the model, and vanishing/pole conditions are
//! imposed through the local expansions at every place where the ansatz
//! could misbehave: the centers of d, the special centers, the support of D,
//! and the places above x = infinity. Conditions over a residue extension
//! field descend to the base through trace pairing.

use super::places::{BiPoly, El, Place};
use super::{Curve, Divisor};
use crate::algebra::fq::{Fq, FqEmbed};
use crate::algebra::poly;
use crate::algebra::ring::{Field, Ring};
use crate::algebra::series::SeriesField;
use crate::error::{Error, Result};

/// A basis element of a Riemann-Roch space: A(x, y)/d(x).
#[derive(Clone, Debug, PartialEq)]
pub struct RRFunction {
    pub num: BiPoly,
    pub den: Vec<El>,
}

/// Dimension and basis of L(D).
pub struct RRBasis {
    pub dim: usize,
    pub basis: Vec<RRFunction>,
}

/// Denominator exponent of a center within D: the largest ceil(n_P / e_P)
/// over pole places P of D at that center.
fn center_pole_exponents(curve: &Curve, d: &Divisor) -> Vec<(Vec<El>, usize)> {
    let mut out: Vec<(Vec<El>, usize)> = vec![];
    for (p, n) in &d.coeffs {
        if *n <= 0 {
            continue;
        }
        let minpoly = match &p.0.center {
            super::places::CenterKey::Infinity => continue,
            super::places::CenterKey::Finite(lifted) => lifted
                .iter()
                .map(|c| curve.fq.from_lifted(c))
                .collect::<Vec<El>>(),
        };
        let k = (*n as usize).div_ceil(p.0.ram);
        match out.iter_mut().find(|(mp, _)| *mp == minpoly) {
            Some((_, e)) => *e = (*e).max(k),
            None => out.push((minpoly, k)),
        }
    }
    out
}

/// All distinct finite centers touched by D.
fn support_centers(curve: &Curve, d: &Divisor) -> Vec<Vec<El>> {
    let mut out: Vec<Vec<El>> = vec![];
    for (p, _) in &d.coeffs {
        if let super::places::CenterKey::Finite(lifted) = &p.0.center {
            let mp: Vec<El> = lifted.iter().map(|c| curve.fq.from_lifted(c)).collect();
            if !out.contains(&mp) {
                out.push(mp);
            }
        }
    }
    out
}

/// Compute L(D) with an extra slack level (0 = default ansatz; retries pass
/// larger values to enlarge both the denominator and the degree bound).
fn rr_space_with_slack(curve: &Curve, d: &Divisor, slack: usize) -> Result<RRBasis> {
    let fq = &curve.fq;
    let n = curve.n;
    let g = curve.genus;
    // denominator d(x)
    let mut den: Vec<El> = vec![fq.one()];
    let mut den_centers: Vec<(Vec<El>, usize)> = vec![];
    for (mp, e) in center_pole_exponents(curve, d) {
        den_centers.push((mp, e));
    }
    for (mp, s) in &curve.special_centers {
        let extra = *s + slack * curve.n;
        match den_centers.iter_mut().find(|(m, _)| m == mp) {
            Some((_, e)) => *e += extra,
            None => den_centers.push((mp.clone(), extra)),
        }
    }
    for (mp, e) in &den_centers {
        for _ in 0..*e {
            den = poly::mul(fq, &den, mp);
        }
    }
    let deg_d = poly::deg(&den).max(0) as usize;
    // degree bound for the numerator coefficients
    let inf_places = curve.places_at_infinity()?;
    let ypole: i64 = inf_places
        .iter()
        .map(|p| (-p.0.y_series.val).max(0))
        .max()
        .unwrap_or(0);
    let dplus = d.plus().degree().max(0) as usize;
    let b = deg_d + dplus + (2 * g.max(0) as usize) + n * ypole as usize + 4 + slack * (n + 2);
    let ncols = n * (b + 1);
    // condition places: above den centers, D-support centers, infinity
    let mut cond_places: Vec<Place> = vec![];
    let mut centers = support_centers(curve, d);
    for (mp, _) in &den_centers {
        if !centers.contains(mp) {
            centers.push(mp.clone());
        }
    }
    for mp in &centers {
        for p in curve.places_above(mp)?.iter() {
            cond_places.push(p.clone());
        }
    }
    for p in inf_places.iter() {
        cond_places.push(p.clone());
    }
    // assemble constraint rows over fq
    let mut ech = NullspaceBuilder::new(fq, ncols);
    for place in &cond_places {
        let np = d
            .coeffs
            .iter()
            .find(|(q, _)| q == place)
            .map(|(_, c)| *c)
            .unwrap_or(0);
        add_place_conditions(curve, place, &den, b, np, &mut ech)?;
    }
    let null = ech.nullspace();
    // sanity when Riemann-Roch pins the dimension
    let degd = d.degree();
    if degd >= 2 * g - 1 {
        let expect = (degd - g + 1).max(0) as usize;
        if null.len() != expect {
            return Err(Error::FunctionField(format!(
                "Riemann-Roch dimension {} != expected {} (deg {}, genus {})",
                null.len(),
                expect,
                degd,
                g
            )));
        }
    }
    let basis = null
        .into_iter()
        .map(|v| RRFunction {
            num: unflatten(fq, &v, n, b),
            den: den.clone(),
        })
        .collect::<Vec<_>>();
    Ok(RRBasis {
        dim: basis.len(),
        basis,
    })
}

/// Compute L(D); retries with enlarged ansatz when the certified dimension
/// check fails.
pub fn rr_space(curve: &Curve, d: &Divisor) -> Result<RRBasis> {
    let mut last = None;
    for slack in 0..3 {
        match rr_space_with_slack(curve, d, slack) {
            Ok(b) => return Ok(b),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::FunctionField("rr failed".into())))
}

fn unflatten(fq: &Fq, v: &[El], n: usize, b: usize) -> BiPoly {
    let mut rows: BiPoly = vec![];
    for j in 0..n {
        let mut row: Vec<El> = v[j * (b + 1)..(j + 1) * (b + 1)].to_vec();
        while row.last().map_or(false, |c| fq.is_zero(c)) {
            row.pop();
        }
        rows.push(row);
    }
    while rows.last().map_or(false, |r| r.is_empty()) {
        rows.pop();
    }
    rows
}

/// Impose ord_P(A/den) >= -n_P at one place: rows for the vanishing of the
/// low-order series coefficients of each ansatz monomial.
fn add_place_conditions(
    curve: &Curve,
    place: &Place,
    den: &[El],
    b: usize,
    np: i64,
    ech: &mut NullspaceBuilder,
) -> Result<()> {
    let fq = &curve.fq;
    let kf = &place.0.field;
    let prec = curve.place_precision();
    let sf = SeriesField::new(kf.clone(), prec);
    let emb = FqEmbed::new(fq, kf)?;
    // series of x and y at the place
    let xs = match (&place.0.center, &place.0.x0) {
        (super::places::CenterKey::Infinity, _) => sf.monomial(kf.one(), -(place.0.ram as i64)),
        (_, Some(x0)) => sf.add(
            &sf.monomial(kf.one(), place.0.ram as i64),
            &sf.monomial(x0.clone(), 0),
        ),
        _ => return Err(Error::FunctionField("malformed place".into())),
    };
    let ys = &place.0.y_series;
    // valuation of the denominator at this place
    let den_series = {
        let mut acc = sf.zero();
        for c in den.iter().rev() {
            acc = sf.mul(&acc, &xs);
            acc = sf.add(&acc, &sf.monomial(emb.map(c), 0));
        }
        acc
    };
    let vden = sf
        .valuation(&den_series)
        .ok_or_else(|| Error::FunctionField("denominator vanishes to precision".into()))?;
    // monomial series x^i y^j for i <= b, j < n
    let n = curve.n;
    let mut xpow = vec![sf.one()];
    for _ in 0..b {
        xpow.push(sf.mul(xpow.last().unwrap(), &xs));
    }
    let mut ypow = vec![sf.one()];
    for _ in 0..n.saturating_sub(1) {
        ypow.push(sf.mul(ypow.last().unwrap(), ys));
    }
    // required: ord(A) >= vden - np; constraints on coefficients of t^m for
    // m in [vmin, vden - np)
    let vmin = (0..n)
        .flat_map(|j| {
            let vy = sf.valuation(&ypow[j]).unwrap_or(0);
            (0..=b).map(move |i| vy + if place.0.center == super::places::CenterKey::Infinity {
                -((i * place.0.ram) as i64)
            } else {
                0
            })
        })
        .min()
        .unwrap_or(0);
    let hi = vden - np;
    if hi <= vmin {
        return Ok(());
    }
    if (hi - vmin) as usize + 4 > prec {
        return Err(Error::FunctionField(
            "insufficient series precision for the conditions".into(),
        ));
    }
    // trace pairing basis: powers of the generator of kf over fq
    let dp = place.0.deg;
    let gens: Vec<El> = {
        let mut v = vec![kf.one()];
        let gen = kf.gen();
        for _ in 1..dp {
            v.push(kf.mul(v.last().unwrap(), &gen));
        }
        v
    };
    let trace_down = |x: &El| -> El {
        // sum of frob^(base_deg * i) over i < dp lands in the embedded base
        let mut acc = x.clone();
        let mut cur = x.clone();
        for _ in 1..dp {
            cur = kf.frob(&cur, fq.degree());
            acc = kf.add(&acc, &cur);
        }
        acc
    };
    // map an embedded base element back to fq coordinates
    let unembed = |x: &El| -> Result<El> {
        // dp-fold trace lands in emb(fq); solve emb(u) = x by linearity over
        // the F_p-coordinates: use frobenius-fixedness: here we use the
        // embedding's preimage through a tiny linear solve
        emb_preimage(fq, kf, &emb, x)
    };
    for m in vmin..hi {
        for lam in &gens {
            let mut row: Vec<El> = Vec::with_capacity(n * (b + 1));
            for j in 0..n {
                for i in 0..=b {
                    let s = sf.mul(&xpow[i], &ypow[j]);
                    let c = s.coeff_of(kf, m);
                    let t = trace_down(&kf.mul(&c, lam));
                    row.push(unembed(&t)?);
                }
            }
            ech.add_row(row);
        }
    }
    Ok(())
}

/// Preimage under the canonical embedding, by solving the F_p-linear system
/// once per embedding (cached in a lookup keyed by the field pair).
fn emb_preimage(fq: &Fq, kf: &Fq, emb: &FqEmbed, x: &El) -> Result<El> {
    if fq.degree() == kf.degree() {
        return Ok(x.clone());
    }
    // x = emb(u): solve coordinatewise: build the matrix of emb on the
    // standard basis and invert lazily per call (degrees are tiny)
    let d = fq.degree();
    let dk = kf.degree();
    let fp = fq.base();
    // columns: emb(e_t) in F_p coordinates
    let mut cols: Vec<Vec<u64>> = vec![];
    for t in 0..d {
        let mut e = fq.zero();
        e[t] = fp.one();
        cols.push(emb.map(&e));
    }
    // solve sum u_t cols[t] = x over F_p via Gaussian elimination dk x d
    let mut aug: Vec<Vec<u64>> = vec![vec![0; d + 1]; dk];
    for r in 0..dk {
        for (t, col) in cols.iter().enumerate() {
            aug[r][t] = col[r];
        }
        aug[r][d] = x[r];
    }
    // eliminate
    let mut row = 0usize;
    let mut pivots = vec![];
    for col in 0..d {
        if let Some(pr) = (row..dk).find(|&r| aug[r][col] != 0) {
            aug.swap(row, pr);
            let inv = fp.inv(&aug[row][col]);
            for c in col..=d {
                aug[row][c] = fp.mul(&aug[row][c], &inv);
            }
            for r in 0..dk {
                if r != row && aug[r][col] != 0 {
                    let f = aug[r][col];
                    for c in col..=d {
                        let t = fp.mul(&f, &aug[row][c]);
                        aug[r][c] = fp.sub(&aug[r][c], &t);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
    }
    // consistency: zero rows must have zero rhs
    for r in row..dk {
        if aug[r][d] != 0 {
            return Err(Error::FunctionField("element outside the base field".into()));
        }
    }
    let mut u = fq.zero();
    for (r, &col) in pivots.iter().enumerate() {
        u[col] = aug[r][d];
    }
    Ok(u)
}

/// Incremental nullspace builder over fq (reduced row echelon).
pub struct NullspaceBuilder {
    fq: Fq,
    ncols: usize,
    rows: Vec<(usize, Vec<El>)>,
}

impl NullspaceBuilder {
    pub fn new(fq: &Fq, ncols: usize) -> Self {
        NullspaceBuilder {
            fq: fq.clone(),
            ncols,
            rows: vec![],
        }
    }
    pub fn add_row(&mut self, mut row: Vec<El>) {
        let fq = &self.fq;
        row.resize(self.ncols, fq.zero());
        for (piv, r) in &self.rows {
            if !fq.is_zero(&row[*piv]) {
                let c = row[*piv].clone();
                for (x, y) in row.iter_mut().zip(r.iter()) {
                    let t = fq.mul(&c, y);
                    *x = fq.sub(x, &t);
                }
            }
        }
        if let Some(piv) = row.iter().position(|x| !fq.is_zero(x)) {
            let ci = fq.inv(&row[piv]);
            for x in row.iter_mut() {
                *x = fq.mul(x, &ci);
            }
            for (_, r) in self.rows.iter_mut() {
                if !fq.is_zero(&r[piv]) {
                    let c = r[piv].clone();
                    for (x, y) in r.iter_mut().zip(row.iter()) {
                        let t = fq.mul(&c, y);
                        *x = fq.sub(x, &t);
                    }
                }
            }
            self.rows.push((piv, row));
            self.rows.sort_by_key(|(p, _)| *p);
        }
    }
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    /// Canonical nullspace basis: one vector per free column, deterministic.
    pub fn nullspace(&self) -> Vec<Vec<El>> {
        let fq = &self.fq;
        let pivots: Vec<usize> = self.rows.iter().map(|(p, _)| *p).collect();
        let mut out = vec![];
        for free in 0..self.ncols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![fq.zero(); self.ncols];
            v[free] = fq.one();
            for (piv, r) in &self.rows {
                v[*piv] = fq.neg(&r[free]);
            }
            out.push(v);
        }
        out
    }
}

/// The divisor of an RRFunction, by direct valuation at every candidate
/// place; verified to have degree zero.
pub fn function_divisor(curve: &Curve, f: &RRFunction) -> Result<Divisor> {
    let fq = &curve.fq;
    // candidate finite centers: resultant of the model with the numerator
    // (zeros), plus denominator and special centers (poles / corrections)
    let mut centers: Vec<Vec<El>> = vec![];
    let resy = crate::model::genus::resultant_y_public(fq, &curve.f, &f.num)?;
    let mut add_from_poly = |pol: &[El], centers: &mut Vec<Vec<El>>| -> Result<()> {
        if poly::deg(pol) < 1 {
            return Ok(());
        }
        let dpol = poly::deriv(fq, pol);
        let sf = if poly::is_zero(&dpol) {
            pol.to_vec()
        } else {
            let g = poly::gcd(fq, pol, &dpol);
            poly::divrem(fq, pol, &g).0
        };
        let (_, facs) = crate::algebra::factor::factor(fq, &sf, 0xd1f)?;
        for (pi, _) in facs {
            if poly::deg(&pi) >= 1 && !centers.contains(&pi) {
                centers.push(pi);
            }
        }
        Ok(())
    };
    add_from_poly(&resy, &mut centers)?;
    add_from_poly(&f.den, &mut centers)?;
    for (mp, _) in &curve.special_centers {
        if !centers.contains(mp) {
            centers.push(mp.clone());
        }
    }
    let mut div = Divisor::zero();
    let den_biv: BiPoly = vec![f.den.clone()];
    for mp in &centers {
        for p in curve.places_above(mp)?.iter() {
            let v = curve.valuation(p, &f.num, &den_biv)?;
            div.add_place(p.clone(), v);
        }
    }
    for p in curve.places_at_infinity()?.iter() {
        let v = curve.valuation(p, &f.num, &den_biv)?;
        div.add_place(p.clone(), v);
    }
    if div.degree() != 0 {
        return Err(Error::FunctionField(format!(
            "function divisor has degree {} (precision or support bug)",
            div.degree()
        )));
    }
    Ok(div)
}

/// Reduce a degree-0 divisor along the origin: the minimal theta >= 0 with
/// D + theta O linearly equivalent to an effective divisor E; returns
/// (E, theta, h) where div(h) = E - D - theta O.
pub fn reduce_along(
    curve: &Curve,
    d: &Divisor,
    origin: &Place,
) -> Result<(Divisor, i64, RRFunction)> {
    assert_eq!(origin.deg(), 1, "origin must be rational");
    let g = curve.genus;
    let lower = (-d.degree()).max(0);
    for theta in lower..=(lower + g.max(0) + 1) {
        let mut dd = d.clone();
        dd.add_place(origin.clone(), theta);
        let space = rr_space(curve, &dd)?;
        if space.dim == 0 {
            continue;
        }
        let h = space.basis[0].clone();
        let divh = function_divisor(curve, &h)?;
        let e = divh.add(&dd);
        if !e.is_effective() {
            return Err(Error::FunctionField(
                "reduction produced a non-effective remainder".into(),
            ));
        }
        return Ok((e, theta, h));
    }
    Err(Error::FunctionField("no effective representative found".into()))
}
