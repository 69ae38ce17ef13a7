//! Exact polynomial arithmetic over the integers: univariate Z[x] and
//! bivariate Z[x,y], with primitive-PRS gcds, exact division, contents, and
//! the subresultant resultant.
//!
//! Bivariate polynomials are stored densely in y with Z[x] coefficients:
//! `f[j]` is the coefficient of y^j.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Zx = Vec<BigInt>;
pub type Zxy = Vec<Zx>;

// ---- Z[x] ----

pub fn zx_trim(f: &mut Zx) {
    while f.last().map_or(false, |c| c.is_zero()) {
        f.pop();
    }
}

pub fn zx_deg(f: &[BigInt]) -> isize {
    f.len() as isize - 1
}

pub fn zx_const(c: i64) -> Zx {
    if c == 0 {
        vec![]
    } else {
        vec![BigInt::from(c)]
    }
}

pub fn zx_add(a: &[BigInt], b: &[BigInt]) -> Zx {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    zx_trim(&mut out);
    out
}

pub fn zx_sub(a: &[BigInt], b: &[BigInt]) -> Zx {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    zx_trim(&mut out);
    out
}

pub fn zx_neg(a: &[BigInt]) -> Zx {
    a.iter().map(|c| -c).collect()
}

pub fn zx_mul(a: &[BigInt], b: &[BigInt]) -> Zx {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    zx_trim(&mut out);
    out
}

pub fn zx_scale(a: &[BigInt], c: &BigInt) -> Zx {
    if c.is_zero() {
        return vec![];
    }
    a.iter().map(|x| x * c).collect()
}

pub fn zx_content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Split into (content, primitive part).
pub fn zx_primitive(a: &[BigInt]) -> (BigInt, Zx) {
    let c = zx_content(a);
    if c.is_zero() {
        return (BigInt::zero(), vec![]);
    }
    let pp = a.iter().map(|x| x / &c).collect();
    (c, pp)
}

/// Exact division a / b in Z[x]; panics if not exact.
pub fn zx_div_exact(a: &[BigInt], b: &[BigInt]) -> Zx {
    assert!(!b.is_empty(), "division by zero");
    if a.is_empty() {
        return vec![];
    }
    assert!(a.len() >= b.len(), "division not exact (degree)");
    let mut rem: Zx = a.to_vec();
    let mut quo = vec![BigInt::zero(); a.len() - b.len() + 1];
    let lead = b.last().unwrap();
    for i in (0..quo.len()).rev() {
        let top = rem[i + b.len() - 1].clone();
        if top.is_zero() {
            continue;
        }
        let (q, r) = top.div_rem(lead);
        assert!(r.is_zero(), "division not exact (leading)");
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &q * bj;
        }
        quo[i] = q;
    }
    zx_trim(&mut rem);
    assert!(rem.is_empty(), "division not exact (remainder)");
    quo
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
pub fn zx_prem(a: &[BigInt], b: &[BigInt]) -> Zx {
    assert!(!b.is_empty());
    let mut r: Zx = a.to_vec();
    let db = zx_deg(b);
    let lead = b.last().unwrap().clone();
    while zx_deg(&r) >= db {
        let dr = zx_deg(&r) as usize;
        let top = r.last().unwrap().clone();
        // r = lead*r - top*x^(dr-db)*b
        let mut nr: Zx = r.iter().map(|c| c * &lead).collect();
        for (j, bj) in b.iter().enumerate() {
            nr[dr - db as usize + j] -= &top * bj;
        }
        zx_trim(&mut nr);
        r = nr;
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Gcd in Z[x] via the primitive PRS; result primitive with positive leading
/// coefficient, times the content gcd.
pub fn zx_gcd(a: &[BigInt], b: &[BigInt]) -> Zx {
    if a.is_empty() {
        return positive_lead(b.to_vec());
    }
    if b.is_empty() {
        return positive_lead(a.to_vec());
    }
    let ca = zx_content(a);
    let cb = zx_content(b);
    let cg = ca.gcd(&cb);
    let mut f: Zx = a.iter().map(|c| c / &ca).collect();
    let mut g: Zx = b.iter().map(|c| c / &cb).collect();
    if zx_deg(&f) < zx_deg(&g) {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_empty() {
        let r = zx_prem(&f, &g);
        let (_, rp) = {
            let c = zx_content(&r);
            if c.is_zero() {
                (c, vec![])
            } else {
                (c.clone(), r.iter().map(|x| x / &c).collect())
            }
        };
        f = g;
        g = rp;
    }
    let out = positive_lead(f);
    out.iter().map(|c| c * &cg).collect()
}

fn positive_lead(mut f: Zx) -> Zx {
    if f.last().map_or(false, |c| c.is_negative()) {
        for c in f.iter_mut() {
            *c = -c.clone();
        }
    }
    f
}

pub fn zx_eval(f: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in f.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn zx_deriv(f: &[BigInt]) -> Zx {
    if f.len() <= 1 {
        return vec![];
    }
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// Resultant in Z[x] (subresultant algorithm, exact sign).
pub fn zx_resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let r = subresultant_generic(
        &ZxDomain,
        &a.iter().map(|c| vec![c.clone()]).collect::<Vec<_>>(),
        &b.iter().map(|c| vec![c.clone()]).collect::<Vec<_>>(),
    );
    match r {
        None => BigInt::zero(),
        Some(c) => {
            debug_assert!(c.len() <= 1);
            c.first().cloned().unwrap_or_else(BigInt::zero)
        }
    }
}

/// Discriminant of f in Z[x]: (-1)^(n(n-1)/2) * Res(f, f') / lc(f).
pub fn zx_discriminant(f: &[BigInt]) -> BigInt {
    let n = zx_deg(f);
    assert!(n >= 1);
    let r = zx_resultant(f, &zx_deriv(f));
    let lead = f.last().unwrap();
    let (q, rr) = r.div_rem(lead);
    debug_assert!(rr.is_zero());
    if (n * (n - 1) / 2) % 2 == 1 {
        -q
    } else {
        q
    }
}

// ---- Z[x,y] ----

pub fn zxy_trim(f: &mut Zxy) {
    while f.last().map_or(false, |c| c.is_empty()) {
        f.pop();
    }
}

pub fn zxy_zero() -> Zxy {
    vec![]
}

pub fn zxy_is_zero(f: &[Zx]) -> bool {
    f.is_empty()
}

pub fn zxy_const(c: i64) -> Zxy {
    if c == 0 {
        vec![]
    } else {
        vec![zx_const(c)]
    }
}

/// Monomial c * x^i * y^j.
pub fn zxy_monomial(c: BigInt, i: usize, j: usize) -> Zxy {
    if c.is_zero() {
        return vec![];
    }
    let mut cx = vec![BigInt::zero(); i + 1];
    cx[i] = c;
    let mut f = vec![vec![]; j + 1];
    f[j] = cx;
    f
}

pub fn zxy_deg_y(f: &[Zx]) -> isize {
    f.len() as isize - 1
}

pub fn zxy_deg_x(f: &[Zx]) -> isize {
    f.iter().map(|c| zx_deg(c)).max().unwrap_or(-1)
}

pub fn zxy_add(a: &[Zx], b: &[Zx]) -> Zxy {
    let mut out = vec![vec![]; a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] = c.clone();
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = zx_add(&out[i], c);
    }
    zxy_trim(&mut out);
    out
}

pub fn zxy_sub(a: &[Zx], b: &[Zx]) -> Zxy {
    let mut out = vec![vec![]; a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] = c.clone();
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = zx_sub(&out[i], c);
    }
    zxy_trim(&mut out);
    out
}

pub fn zxy_neg(a: &[Zx]) -> Zxy {
    a.iter().map(|c| zx_neg(c)).collect()
}

pub fn zxy_mul(a: &[Zx], b: &[Zx]) -> Zxy {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![vec![]; a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_empty() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_empty() {
                continue;
            }
            out[i + j] = zx_add(&out[i + j], &zx_mul(ai, bj));
        }
    }
    zxy_trim(&mut out);
    out
}

pub fn zxy_pow(a: &[Zx], e: usize) -> Zxy {
    let mut acc = zxy_const(1);
    for _ in 0..e {
        acc = zxy_mul(&acc, a);
    }
    acc
}

/// Content of f as a polynomial in y: gcd of the Z[x] coefficients.
pub fn zxy_content_y(f: &[Zx]) -> Zx {
    let mut g: Zx = vec![];
    for c in f {
        g = zx_gcd(&g, c);
        if zx_deg(&g) == 0 && g.first().map_or(false, |c| c.is_one()) {
            break;
        }
    }
    g
}

/// Integer content of all coefficients.
pub fn zxy_int_content(f: &[Zx]) -> BigInt {
    let mut g = BigInt::zero();
    for c in f {
        g = g.gcd(&zx_content(c));
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divide out the integer content and fix the sign so that the
/// graded-lex-leading monomial (x before y) has positive coefficient.
pub fn zxy_normalize(f: &[Zx]) -> Zxy {
    zxy_normalize_pref(f, false)
}

/// Content/sign normalization with a choice of tie-breaking variable: the
/// leading monomial maximizes total degree, then the preferred variable's
/// exponent (`prefer_y` switches the tie-break to the y slot).
pub fn zxy_normalize_pref(f: &[Zx], prefer_y: bool) -> Zxy {
    if zxy_is_zero(f) {
        return vec![];
    }
    let c = zxy_int_content(f);
    let mut out: Zxy = f
        .iter()
        .map(|cy| cy.iter().map(|v| v / &c).collect())
        .collect();
    let mut best: Option<(usize, usize)> = None;
    for (j, cy) in out.iter().enumerate() {
        for (i, v) in cy.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let key = |i: usize, j: usize| if prefer_y { (i + j, j) } else { (i + j, i) };
            let better = match best {
                None => true,
                Some((bi, bj)) => key(i, j) > key(bi, bj),
            };
            if better {
                best = Some((i, j));
            }
        }
    }
    if let Some((i, j)) = best {
        if out[j][i].is_negative() {
            out = zxy_neg(&out);
        }
    }
    out
}

/// Exact division by a Z[x] polynomial (each y-coefficient divided exactly).
pub fn zxy_div_zx_exact(f: &[Zx], d: &[BigInt]) -> Zxy {
    f.iter()
        .map(|c| {
            if c.is_empty() {
                vec![]
            } else {
                zx_div_exact(c, d)
            }
        })
        .collect()
}

/// Exact division of bivariate polynomials; panics if not exact.
pub fn zxy_div_exact(a: &[Zx], b: &[Zx]) -> Zxy {
    assert!(!zxy_is_zero(b), "division by zero");
    if zxy_is_zero(a) {
        return vec![];
    }
    assert!(a.len() >= b.len(), "division not exact (y-degree)");
    let mut rem: Zxy = a.to_vec();
    let mut quo: Zxy = vec![vec![]; a.len() - b.len() + 1];
    let lead = b.last().unwrap();
    for i in (0..quo.len()).rev() {
        let top = rem[i + b.len() - 1].clone();
        if top.is_empty() {
            continue;
        }
        // top must be divisible by lead in Z[x]
        let q = zx_poly_div_exact(&top, lead);
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] = zx_sub(&rem[i + j], &zx_mul(&q, bj));
        }
        quo[i] = q;
    }
    zxy_trim(&mut rem);
    assert!(zxy_is_zero(&rem), "division not exact (remainder)");
    zxy_trim(&mut quo);
    quo
}

fn zx_poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Zx {
    zx_div_exact(a, b)
}

/// Gcd in Z[x][y] by the primitive PRS in y.
pub fn zxy_gcd(a: &[Zx], b: &[Zx]) -> Zxy {
    if zxy_is_zero(a) {
        return b.to_vec();
    }
    if zxy_is_zero(b) {
        return a.to_vec();
    }
    let ca = zxy_content_y(a);
    let cb = zxy_content_y(b);
    let cg = zx_gcd(&ca, &cb);
    let mut f = zxy_div_zx_exact(a, &ca);
    let mut g = zxy_div_zx_exact(b, &cb);
    if zxy_deg_y(&f) < zxy_deg_y(&g) {
        std::mem::swap(&mut f, &mut g);
    }
    while !zxy_is_zero(&g) {
        if zxy_deg_y(&g) == 0 {
            // gcd of y-primitive f and a y-constant is a content matter: 1.
            f = zxy_const(1);
            break;
        }
        let r = zxy_prem(&f, &g);
        let rc = zxy_content_y(&r);
        let rp = if zxy_is_zero(&r) {
            vec![]
        } else {
            zxy_div_zx_exact(&r, &rc)
        };
        f = g;
        g = rp;
    }
    // multiply back the content gcd
    zxy_mul(&f, &[cg])
}

/// Pseudo-remainder of bivariate polynomials in the variable y.
pub fn zxy_prem(a: &[Zx], b: &[Zx]) -> Zxy {
    assert!(!zxy_is_zero(b));
    let db = zxy_deg_y(b);
    let lead = b.last().unwrap().clone();
    let mut r: Zxy = a.to_vec();
    while zxy_deg_y(&r) >= db {
        let dr = zxy_deg_y(&r) as usize;
        let top = r.last().unwrap().clone();
        let mut nr: Zxy = r.iter().map(|c| zx_mul(c, &lead)).collect();
        for (j, bj) in b.iter().enumerate() {
            nr[dr - db as usize + j] = zx_sub(&nr[dr - db as usize + j], &zx_mul(&top, bj));
        }
        zxy_trim(&mut nr);
        r = nr;
        if zxy_is_zero(&r) {
            break;
        }
    }
    r
}

/// Evaluate f(x0, y) in Z[y].
pub fn zxy_eval_x(f: &[Zx], x0: &BigInt) -> Zx {
    let mut out: Zx = f.iter().map(|c| zx_eval(c, x0)).collect();
    zx_trim(&mut out);
    out
}

/// Evaluate fully at (x0, y0).
pub fn zxy_eval(f: &[Zx], x0: &BigInt, y0: &BigInt) -> BigInt {
    let fy = zxy_eval_x(f, x0);
    zx_eval(&fy, y0)
}

/// Transpose the roles of x and y.
pub fn zxy_swap_vars(f: &[Zx]) -> Zxy {
    let dx = zxy_deg_x(f);
    if dx < 0 {
        return vec![];
    }
    let mut out: Zxy = vec![vec![]; dx as usize + 1];
    for (j, cy) in f.iter().enumerate() {
        for (i, v) in cy.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            if out[i].len() <= j {
                out[i].resize(j + 1, BigInt::zero());
            }
            out[i][j] = v.clone();
        }
    }
    for c in out.iter_mut() {
        zx_trim(c);
    }
    zxy_trim(&mut out);
    out
}

// ---- generic subresultant over a coefficient domain ----

/// Minimal "UFD-like" interface needed by the subresultant resultant: exact
/// arithmetic plus exact division.
trait Domain {
    type T: Clone + PartialEq;
    fn zero(&self) -> Self::T;
    fn one(&self) -> Self::T;
    fn is_zero(&self, a: &Self::T) -> bool;
    fn mul(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn sub(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn div_exact(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn neg(&self, a: &Self::T) -> Self::T;
    fn pow(&self, a: &Self::T, e: usize) -> Self::T {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }
}

struct ZxDomain;
impl Domain for ZxDomain {
    type T = Zx;
    fn zero(&self) -> Zx {
        vec![]
    }
    fn one(&self) -> Zx {
        vec![BigInt::one()]
    }
    fn is_zero(&self, a: &Zx) -> bool {
        a.is_empty()
    }
    fn mul(&self, a: &Zx, b: &Zx) -> Zx {
        zx_mul(a, b)
    }
    fn sub(&self, a: &Zx, b: &Zx) -> Zx {
        zx_sub(a, b)
    }
    fn div_exact(&self, a: &Zx, b: &Zx) -> Zx {
        if a.is_empty() {
            vec![]
        } else {
            zx_div_exact(a, b)
        }
    }
    fn neg(&self, a: &Zx) -> Zx {
        zx_neg(a)
    }
}

/// Subresultant resultant of two polynomials with coefficients in D.
/// Coefficients are slices of D-elements in ascending degree. Returns None for
/// resultant zero by the zero-polynomial convention, Some(res) otherwise (the
/// value may still be the zero element when the inputs share a root).
fn subresultant_generic<D: Domain>(dom: &D, a: &[D::T], b: &[D::T]) -> Option<D::T> {
    let trim = |mut f: Vec<D::T>| -> Vec<D::T> {
        while f.last().map_or(false, |c| dom.is_zero(c)) {
            f.pop();
        }
        f
    };
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    if a.is_empty() || b.is_empty() {
        return None;
    }
    let mut sign_flip = false;
    if a.len() < b.len() {
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            sign_flip = !sign_flip;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.len() == 1 {
        let r = dom.pow(&b[0], a.len() - 1);
        return Some(if sign_flip { dom.neg(&r) } else { r });
    }
    let mut g = dom.one();
    let mut h = dom.one();
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign_flip = !sign_flip;
        }
        // pseudo-remainder prem(a, b)
        let mut r: Vec<D::T> = a.clone();
        let lead_b = b[db].clone();
        while !r.is_empty() && r.len() - 1 >= db {
            let dr = r.len() - 1;
            let top = r[dr].clone();
            let mut nr: Vec<D::T> = r.iter().map(|c| dom.mul(c, &lead_b)).collect();
            for (j, bj) in b.iter().enumerate() {
                let t = dom.mul(&top, bj);
                let idx = dr - db + j;
                nr[idx] = dom_sub(dom, &nr[idx], &t);
            }
            r = trim(nr);
            if r.is_empty() {
                break;
            }
        }
        if r.is_empty() {
            return Some(dom.zero()); // common factor => resultant 0
        }
        let divisor = dom.mul(&g, &dom.pow(&h, delta));
        let newb: Vec<D::T> = r.iter().map(|c| dom.div_exact(c, &divisor)).collect();
        a = b;
        b = trim(newb);
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            // h^{1-delta} g^delta, exact in the domain
            let gd = dom.pow(&g, delta);
            let hd = dom.pow(&h, delta - 1);
            dom.div_exact(&gd, &hd)
        };
        if b.len() == 1 {
            // res = sign * h^{1 - deg a} * lc(b)^{deg a}
            let da = a.len() - 1;
            let num = dom.pow(&b[0], da);
            let r = if da == 0 {
                dom.mul(&h, &num)
            } else {
                let hd = dom.pow(&h, da - 1);
                dom.div_exact(&num, &hd)
            };
            // The da == 0 branch is unreachable (loop guard), kept for clarity.
            return Some(if sign_flip { dom.neg(&r) } else { r });
        }
    }
}

fn dom_sub<D: Domain>(dom: &D, a: &D::T, b: &D::T) -> D::T {
    dom.sub(a, b)
}

/// Resultant of two bivariate polynomials with respect to y: an element of
/// Z[x]. Sylvester convention: Res(y-a, y-b) = a - b.
pub fn zxy_resultant_y(f: &[Zx], g: &[Zx]) -> Result<Zx> {
    if zxy_deg_y(f) <= 0 && zxy_deg_y(g) <= 0 {
        return Err(Error::Algebra("nothing to eliminate".into()));
    }
    if zxy_is_zero(f) || zxy_is_zero(g) {
        return Err(Error::Algebra("resultant of zero polynomial".into()));
    }
    match subresultant_generic(&ZxDomain, f, g) {
        None => Ok(vec![]),
        Some(r) => Ok(r),
    }
}

/// Resultant with respect to x: swap variables first.
pub fn zxy_resultant_x(f: &[Zx], g: &[Zx]) -> Result<Zx> {
    let ft = zxy_swap_vars(f);
    let gt = zxy_swap_vars(g);
    zxy_resultant_y(&ft, &gt)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y_minus_const(c: i64) -> Zxy {
        vec![zx_const(c), zx_const(1)]
    }

    #[test]
    fn resultant_linear_case() {
        // Res_y(y - a, y - b) with a, b specialized integers: a - b.
        for (a, b) in [(3i64, 5i64), (-2, 7), (4, 4)] {
            let f = y_minus_const(-a);
            let g = y_minus_const(-b);
            let r = zxy_resultant_y(&f, &g).unwrap();
            assert_eq!(r, zx_const(a - b));
        }
    }

    #[test]
    fn resultant_sylvester_oracle() {
        // Res_y(y^2 - x, y - x) = x^2 - x, by hand-expanding the 3x3 Sylvester
        // determinant | 1 0 -x ; 1 -x 0 ; 0 1 -x | (f-rows first).
        let f: Zxy = vec![vec![BigInt::zero(), BigInt::from(-1)], vec![], zx_const(1)];
        let g: Zxy = vec![vec![BigInt::zero(), BigInt::from(-1)], zx_const(1)];
        let r = zxy_resultant_y(&f, &g).unwrap();
        let expect: Zx = vec![BigInt::zero(), BigInt::from(-1), BigInt::from(1)];
        assert_eq!(r, expect);
    }

    #[test]
    fn resultant_shared_root_zero() {
        let f: Zxy = vec![zx_const(2), zx_const(3), zx_const(1)]; // y^2+3y+2
        let r = zxy_resultant_y(&f, &f).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn resultant_nothing_to_eliminate() {
        let f: Zxy = vec![vec![BigInt::from(1), BigInt::from(2)]]; // 1+2x, constant in y
        assert!(zxy_resultant_y(&f, &f).is_err());
    }

    #[test]
    fn gcd_and_division() {
        // (y+x)(y-3) and (y+x)(y+5): gcd = y+x
        let a = zxy_mul(
            &vec![vec![BigInt::zero(), BigInt::one()], zx_const(1)],
            &y_minus_const(-3),
        );
        let b = zxy_mul(
            &vec![vec![BigInt::zero(), BigInt::one()], zx_const(1)],
            &y_minus_const(5),
        );
        let g = zxy_gcd(&a, &b);
        let gn = zxy_normalize(&g);
        assert_eq!(gn, vec![vec![BigInt::zero(), BigInt::one()], zx_const(1)]);
        let q = zxy_div_exact(&a, &gn);
        assert_eq!(q, y_minus_const(-3));
    }

    #[test]
    fn zx_gcd_primitive() {
        // gcd(6(x+1)^2, 4(x+1)(x-2)) = 2(x+1)
        let a = zx_scale(&zx_mul(&[1.into(), 1.into()], &[1.into(), 1.into()]), &6.into());
        let b = zx_scale(&zx_mul(&[1.into(), 1.into()], &[(-2).into(), 1.into()]), &4.into());
        let g = zx_gcd(&a, &b);
        assert_eq!(g, vec![BigInt::from(2), BigInt::from(2)]);
    }

    #[test]
    fn discriminant_quadratic() {
        // disc(x^2 + 3x + 1) = 9 - 4 = 5
        let f: Zx = vec![1.into(), 3.into(), 1.into()];
        assert_eq!(zx_discriminant(&f), BigInt::from(5));
    }
}
