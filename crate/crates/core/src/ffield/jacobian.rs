//! Group law of Pic^0 on a plane model: classes represented by effective
//! divisors of degree g against a fixed rational origin place, addition via
//! reduction, equality via one-dimensionality tests, and seeded random
//! sampling.

use super::places::{El, Place};
use super::rr::{self, RRFunction};
use super::{Curve, Divisor};
use crate::algebra::poly;
use crate::algebra::ring::{Field, Ring};
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A point of the Jacobian: the class [eff - g O].
#[derive(Clone, Debug)]
pub struct ClassRep {
    pub eff: Divisor,
}

pub struct Jacobian<'a> {
    pub curve: &'a Curve,
    pub origin: Place,
}

impl<'a> Jacobian<'a> {
    pub fn new(curve: &'a Curve, origin: Place) -> Result<Jacobian<'a>> {
        if origin.deg() != 1 {
            return Err(Error::FunctionField("origin must be a rational place".into()));
        }
        Ok(Jacobian { curve, origin })
    }

    pub fn zero(&self) -> ClassRep {
        ClassRep {
            eff: Divisor::single(self.origin.clone(), self.curve.genus),
        }
    }

    /// Reduce an arbitrary degree-0 divisor to the standard form, returning
    /// the class and the reduction function h with
    /// div(h) = eff + (g - theta) O - (D + g O).
    pub fn reduce(&self, d: &Divisor) -> Result<(ClassRep, RRFunction)> {
        if d.degree() != 0 {
            return Err(Error::FunctionField("reduce expects a degree-0 divisor".into()));
        }
        let (e, theta, h) = rr::reduce_along(self.curve, d, &self.origin)?;
        let mut eff = e;
        eff.add_place(self.origin.clone(), self.curve.genus - theta);
        if !eff.is_effective() || eff.degree() != self.curve.genus {
            return Err(Error::FunctionField("bad reduced representative".into()));
        }
        Ok((ClassRep { eff }, h))
    }

    pub fn add(&self, a: &ClassRep, b: &ClassRep) -> Result<ClassRep> {
        Ok(self.add_with_function(a, b)?.0)
    }

    /// Addition returning the reduction function realizing
    /// div(h) = eff_{a+b} - eff_a - eff_b + g O.
    pub fn add_with_function(&self, a: &ClassRep, b: &ClassRep) -> Result<(ClassRep, RRFunction)> {
        let g = self.curve.genus;
        let mut d = a.eff.add(&b.eff);
        d.add_place(self.origin.clone(), -2 * g);
        self.reduce(&d)
    }

    pub fn neg(&self, a: &ClassRep) -> Result<ClassRep> {
        let g = self.curve.genus;
        let mut d = a.eff.neg();
        d.add_place(self.origin.clone(), g);
        Ok(self.reduce(&d)?.0)
    }

    pub fn sub(&self, a: &ClassRep, b: &ClassRep) -> Result<ClassRep> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    pub fn is_zero(&self, a: &ClassRep) -> Result<bool> {
        // [E - gO] = 0 iff L(E - gO)... dim L(gO - E + gO...) — test by
        // comparing against the canonical zero representative.
        self.equal(a, &self.zero())
    }

    /// Class equality: [E_a - gO] = [E_b - gO] iff the degree-0 divisor
    /// E_a - E_b is principal iff L(E_b - E_a) is nonzero.
    pub fn equal(&self, a: &ClassRep, b: &ClassRep) -> Result<bool> {
        if a.eff == b.eff {
            return Ok(true);
        }
        let d = b.eff.add(&a.eff.neg());
        let space = rr::rr_space(self.curve, &d)?;
        Ok(space.dim > 0)
    }

    pub fn scalar_mul(&self, n: &BigUint, a: &ClassRep) -> Result<ClassRep> {
        if n.is_zero() {
            return Ok(self.zero());
        }
        let bits = n.to_radix_be(2);
        let mut acc = self.zero();
        for bit in bits {
            acc = self.add(&acc, &acc)?;
            if bit == 1 {
                acc = self.add(&acc, a)?;
            }
        }
        Ok(acc)
    }

    pub fn scalar_mul_i64(&self, n: i64, a: &ClassRep) -> Result<ClassRep> {
        let c = self.scalar_mul(&BigUint::from(n.unsigned_abs()), a)?;
        if n < 0 {
            self.neg(&c)
        } else {
            Ok(c)
        }
    }

    /// Seeded random class: a few places of degree <= 2 from random fibers,
    /// reduced against the origin.
    pub fn random_class(&self, seed: u64) -> Result<ClassRep> {
        let fq = &self.curve.fq;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = self.curve.genus.max(1);
        let mut d = Divisor::zero();
        let mut total = 0i64;
        let mut guard = 0;
        while total < g {
            guard += 1;
            if guard > 400 {
                return Err(Error::FunctionField("random sampling exhausted".into()));
            }
            let x0 = fq.from_lifted(&(0..fq.degree())
                .map(|_| rng.gen_range(0..fq.p()))
                .collect::<Vec<u64>>());
            // the center x - x0
            let mp = vec![fq.neg(&x0), fq.one()];
            let places = match self.curve.places_above(&mp) {
                Ok(p) => p,
                Err(_) => continue,
            };
            let small: Vec<&Place> = places
                .iter()
                .filter(|p| p.deg() <= 2 && p.0.ram == 1)
                .collect();
            if small.is_empty() {
                continue;
            }
            let pick = small[rng.gen_range(0..small.len())];
            if *pick == self.origin {
                continue;
            }
            d.add_place(pick.clone(), 1);
            total += pick.deg() as i64;
        }
        d.add_place(self.origin.clone(), -total);
        Ok(self.reduce(&d)?.0)
    }

    /// Evaluate an RR function at a rational place (the constant term of its
    /// local expansion). Errors when the function has a zero or pole there.
    pub fn eval_at_rational(&self, f: &RRFunction, place: &Place) -> Result<El> {
        let fq = &self.curve.fq;
        let den_biv: super::places::BiPoly = vec![f.den.clone()];
        let sf = crate::algebra::series::SeriesField::new(
            place.0.field.clone(),
            self.curve.place_precision(),
        );
        let nv = self.curve.expand_at(place, &f.num)?;
        let dv = self.curve.expand_at(place, &den_biv[0..1].to_vec())?;
        match (sf.valuation(&nv), sf.valuation(&dv)) {
            (Some(a), Some(b)) if a == b => {
                let num = sf.leading(&nv).unwrap();
                let den = sf.leading(&dv).unwrap();
                let v = place.0.field.div(&num, &den);
                // place is rational so the value lies in the base field image
                if place.0.field.degree() == fq.degree() {
                    Ok(v)
                } else {
                    Err(Error::FunctionField("evaluation place not rational".into()))
                }
            }
            _ => Err(Error::FunctionField(
                "support collision: function has zero or pole at the evaluation place".into(),
            )),
        }
    }
}

/// Apply the q-power Frobenius to a class representative.
pub fn class_frobenius(curve: &Curve, a: &ClassRep) -> Result<ClassRep> {
    let mut eff = Divisor::zero();
    for (p, n) in &a.eff.coeffs {
        let fp = curve.place_frobenius(p)?;
        eff.add_place(fp, *n);
    }
    Ok(ClassRep { eff })
}

/// Convenience: count the rational places above a sweep of x-values
/// (degree-one place counting for small fields).
pub fn count_rational_places(curve: &Curve) -> Result<u64> {
    let fq = &curve.fq;
    if fq.degree() != 1 {
        return Err(Error::FunctionField("counting expects a prime field".into()));
    }
    let p = fq.p();
    let mut count = 0u64;
    for x in 0..p {
        let x0 = fq.from_base(fq.base().to_el(x));
        let mp = vec![fq.neg(&x0), fq.one()];
        // cheap path at smooth centers: distinct roots of f(x0, y) plus
        // ramified/singular handled by the full enumeration
        let places = curve.places_above(&mp)?;
        count += places.iter().filter(|pl| pl.deg() == 1).count() as u64;
    }
    for pl in curve.places_at_infinity()?.iter() {
        if pl.deg() == 1 {
            count += 1;
        }
    }
    Ok(count)
}

/// Fast degree-one place count: root counting at smooth specializations and
/// place enumeration only at the special centers.
pub fn count_rational_places_fast(curve: &Curve) -> Result<u64> {
    let fq = &curve.fq;
    if fq.degree() != 1 {
        return Err(Error::FunctionField("counting expects a prime field".into()));
    }
    let fp = fq.base();
    let p = fq.p();
    // special x-values (singular or lc-zero): handled with full places
    let mut special_x: Vec<u64> = vec![];
    for (mp, _) in &curve.special_centers {
        if poly::deg(mp) == 1 {
            special_x.push(fp.lift(fq.to_base(&fq.neg(&mp[0]))));
        }
    }
    let mut count = 0u64;
    for x in 0..p {
        if special_x.contains(&x) {
            continue;
        }
        let x0 = fq.from_base(fp.to_el(x));
        // count distinct roots of f(x0, y)
        let mut spec: Vec<El> = curve
            .f
            .iter()
            .map(|row| poly::eval(fq, row, &x0))
            .collect();
        poly::trim(fq, &mut spec);
        if poly::deg(&spec) < 0 {
            return Err(Error::FunctionField("vertical component".into()));
        }
        if poly::deg(&spec) == 0 {
            continue;
        }
        // deg gcd(y^q - y, spec) = number of distinct roots
        let xq = poly::powmod_u64(fq, &vec![fq.zero(), fq.one()], p, &spec);
        let diff = poly::sub(fq, &xq, &vec![fq.zero(), fq.one()]);
        let g = poly::gcd(fq, &diff, &spec);
        count += poly::deg(&g).max(0) as u64;
    }
    for x in special_x {
        let x0 = fq.from_base(fp.to_el(x));
        let mp = vec![fq.neg(&x0), fq.one()];
        count += curve
            .places_above(&mp)?
            .iter()
            .filter(|pl| pl.deg() == 1)
            .count() as u64;
    }
    for pl in curve.places_at_infinity()?.iter() {
        if pl.deg() == 1 {
            count += 1;
        }
    }
    Ok(count)
}
