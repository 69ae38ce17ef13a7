//! Renormalization of a curve-with-point into Tate normal form.
//!
//! A pair (E, P) with ord(P) >= 4 has a unique representative
//! E_{b,c}: Y^2 + (1-c)XY - bY = X^3 - bX^2 with P at (0,0); the coordinate
//! change is a translation, a shear killing a4, and a scaling matching
//! a2 = a3.

use super::{Point, TateCurve, Weierstrass};
use crate::algebra::ring::Field;
use crate::error::{Error, Result};

/// The substitution x = u^2 X + r, y = u^3 Y + s u^2 X + t carrying the
/// normalized curve back to the original one.
#[derive(Clone, Debug, PartialEq)]
pub struct IsoData<T> {
    pub u: T,
    pub r: T,
    pub s: T,
    pub t: T,
}

impl<T: Clone> IsoData<T> {
    /// Map a point of the original curve to the Tate model.
    pub fn to_tate<F: Field<El = T>>(&self, f: &F, p: &Point<T>) -> Point<T> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let u2 = f.mul(&self.u, &self.u);
                let u3 = f.mul(&u2, &self.u);
                let xr = f.sub(x, &self.r);
                let nx = f.div(&xr, &u2);
                let ny = f.div(&f.sub(&f.sub(y, &self.t), &f.mul(&self.s, &xr)), &u3);
                Point::Affine(nx, ny)
            }
        }
    }

    /// Map a point of the Tate model back to the original curve.
    pub fn from_tate<F: Field<El = T>>(&self, f: &F, p: &Point<T>) -> Point<T> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let u2 = f.mul(&self.u, &self.u);
                let u3 = f.mul(&u2, &self.u);
                let ox = f.add(&f.mul(&u2, x), &self.r);
                let oy = f.add(
                    &f.add(&f.mul(&u3, y), &f.mul(&self.s, &f.mul(&u2, x))),
                    &self.t,
                );
                Point::Affine(ox, oy)
            }
        }
    }
}

/// Apply the (u, r, s, t) substitution to curve coefficients.
pub fn transform<F: Field>(
    f: &F,
    w: &Weierstrass<F::El>,
    iso: &IsoData<F::El>,
) -> Weierstrass<F::El> {
    let (u, r, s, t) = (&iso.u, &iso.r, &iso.s, &iso.t);
    let ui = f.inv(u);
    let u2i = f.mul(&ui, &ui);
    let u3i = f.mul(&u2i, &ui);
    let u4i = f.mul(&u2i, &u2i);
    let u6i = f.mul(&u3i, &u3i);
    let a1 = f.mul(&f.add(&w.a1, &f.mul_i64(s, 2)), &ui);
    let a2 = {
        let mut v = f.sub(&w.a2, &f.mul(s, &w.a1));
        v = f.add(&v, &f.mul_i64(r, 3));
        v = f.sub(&v, &f.mul(s, s));
        f.mul(&v, &u2i)
    };
    let a3 = {
        let mut v = f.add(&w.a3, &f.mul(r, &w.a1));
        v = f.add(&v, &f.mul_i64(t, 2));
        f.mul(&v, &u3i)
    };
    let a4 = {
        let mut v = f.sub(&w.a4, &f.mul(s, &w.a3));
        v = f.add(&v, &f.mul_i64(&f.mul(r, &w.a2), 2));
        v = f.sub(&v, &f.mul(&f.add(t, &f.mul(r, s)), &w.a1));
        v = f.add(&v, &f.mul_i64(&f.mul(r, r), 3));
        v = f.sub(&v, &f.mul_i64(&f.mul(s, t), 2));
        f.mul(&v, &u4i)
    };
    let a6 = {
        let mut v = f.add(&w.a6, &f.mul(r, &w.a4));
        v = f.add(&v, &f.mul(&f.mul(r, r), &w.a2));
        v = f.add(&v, &f.mul(&f.mul(r, r), r));
        v = f.sub(&v, &f.mul(t, &w.a3));
        v = f.sub(&v, &f.mul(t, t));
        v = f.sub(&v, &f.mul(&f.mul(r, t), &w.a1));
        f.mul(&v, &u6i)
    };
    Weierstrass { a1, a2, a3, a4, a6 }
}

/// Bring (E, P) into Tate normal form. Errors when ord(P) <= 3 (the shear or
/// scale degenerates).
pub fn tate_normalize<F: Field>(
    f: &F,
    curve: &Weierstrass<F::El>,
    p: &Point<F::El>,
) -> Result<(TateCurve<F::El>, IsoData<F::El>)> {
    let (px, py) = p
        .xy()
        .ok_or_else(|| Error::Moduli("cannot normalize the point at infinity".into()))?;
    // translate P to the origin
    let t1 = IsoData {
        u: f.one(),
        r: px.clone(),
        s: f.zero(),
        t: py.clone(),
    };
    let w1 = transform(f, curve, &t1);
    if !f.is_zero(&w1.a6) {
        return Err(Error::Moduli("point does not lie on the curve".into()));
    }
    // shear to kill a4: s = a4 / a3 (a3 = 0 means 2P = O)
    if f.is_zero(&w1.a3) {
        return Err(Error::Moduli(
            "point of order <= 2 cannot be normalized".into(),
        ));
    }
    let shear = f.div(&w1.a4, &w1.a3);
    let t2 = IsoData {
        u: f.one(),
        r: f.zero(),
        s: shear.clone(),
        t: f.zero(),
    };
    let w2 = transform(f, &w1, &t2);
    debug_assert!(f.is_zero(&w2.a4));
    // scale to a2 = a3: u = a3 / a2 (a2 = 0 means 3P = O)
    if f.is_zero(&w2.a2) {
        return Err(Error::Moduli("point of order 3 cannot be normalized".into()));
    }
    let u = f.div(&w2.a3, &w2.a2);
    if f.is_zero(&u) {
        return Err(Error::Moduli("degenerate scaling".into()));
    }
    let t3 = IsoData {
        u: u.clone(),
        r: f.zero(),
        s: f.zero(),
        t: f.zero(),
    };
    let w3 = transform(f, &w2, &t3);
    debug_assert!(f.eq_el(&w3.a2, &w3.a3));
    let b = f.neg(&w3.a2);
    let c = f.sub(&f.one(), &w3.a1);
    // composite: x = u^2 X + px, y = u^3 Y + (shear u^2) X + py
    let iso = IsoData {
        u,
        r: px.clone(),
        s: shear,
        t: py.clone(),
    };
    Ok((TateCurve { b, c }, iso))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::Ring;
    use crate::algebra::Fp;
    use crate::tate::CurveOps;

    #[test]
    fn already_normalized_is_identity() {
        let f = Fp::new(10007).unwrap();
        let e = TateCurve {
            b: f.from_i64(3),
            c: f.from_i64(5),
        };
        let w = e.to_weierstrass(&f);
        let p = Point::Affine(f.zero(), f.zero());
        let (e2, iso) = tate_normalize(&f, &w, &p).unwrap();
        assert_eq!(e2, e);
        assert!(f.is_one(&iso.u));
        assert!(f.is_zero(&iso.r) && f.is_zero(&iso.s) && f.is_zero(&iso.t));
    }

    #[test]
    fn random_isomorphism_roundtrip() {
        // Uniqueness of the Tate form: conjugating E_{b,c} by a random
        // coordinate change and renormalizing recovers (b, c) exactly.
        let f = Fp::new(10007).unwrap();
        let e = TateCurve {
            b: f.from_i64(7),
            c: f.from_i64(11),
        };
        let w = e.to_weierstrass(&f);
        for (u, r, s, t) in [(2i64, 3i64, 4i64, 5i64), (9, 0, 1, 8), (5, 100, 200, 300)] {
            let iso = IsoData {
                u: f.from_i64(u),
                r: f.from_i64(r),
                s: f.from_i64(s),
                t: f.from_i64(t),
            };
            let w2 = transform(&f, &w, &iso);
            let p_new = {
                let u2 = f.mul(&iso.u, &iso.u);
                let u3 = f.mul(&u2, &iso.u);
                let xr = f.neg(&iso.r);
                Point::Affine(
                    f.div(&xr, &u2),
                    f.div(&f.sub(&f.sub(&f.zero(), &iso.t), &f.mul(&iso.s, &xr)), &u3),
                )
            };
            let ops = CurveOps::new(&f, w2.clone());
            assert!(ops.is_on_curve(&p_new));
            let (e2, _) = tate_normalize(&f, &w2, &p_new).unwrap();
            assert_eq!(e2, e);
        }
    }

    #[test]
    fn small_order_rejected() {
        let f = Fp::new(101).unwrap();
        // y^2 = x^3 + x has (0,0) of order 2
        let w = Weierstrass {
            a1: f.zero(),
            a2: f.zero(),
            a3: f.zero(),
            a4: f.one(),
            a6: f.zero(),
        };
        let p = Point::Affine(f.zero(), f.zero());
        assert!(tate_normalize(&f, &w, &p).is_err());
    }
}
