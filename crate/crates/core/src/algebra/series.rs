//! Truncated Laurent series over a field, and the Laurent series field as a
//! `Field` context.
//!
//! A series stores the full known coefficient window: `coeffs[i]` is the
//! coefficient of t^(val + i), and exactly the exponents val <= k < prec are
//! known, so `coeffs.len() == prec - val`. The leading stored coefficient is
//! nonzero unless the series is zero to its precision (empty window with
//! val == prec). Arithmetic propagates precision pessimistically; relative
//! precision never exceeds the field's working precision.
//! These series drive the cusp expansions on Tate curves and the local
//! expansions at places of plane curves.

use super::ring::{Field, Ring};

/// A Laurent series known on the exponent window [val, prec).
#[derive(Clone, Debug, PartialEq)]
pub struct Series<T> {
    pub val: i64,
    pub prec: i64,
    pub coeffs: Vec<T>,
}

impl<T: Clone> Series<T> {
    pub fn is_zero_to_prec(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff_of<F: Field<El = T>>(&self, field: &F, k: i64) -> T {
        if k < self.val || self.coeffs.is_empty() {
            return field.zero();
        }
        let idx = (k - self.val) as usize;
        self.coeffs
            .get(idx)
            .cloned()
            .unwrap_or_else(|| field.zero())
    }
}

const ZERO_PREC: i64 = i64::MAX / 4;

/// The field of Laurent series over F with a fixed relative working
/// precision (number of retained terms from the leading exponent).
#[derive(Clone, Debug)]
pub struct SeriesField<F: Field> {
    pub base: F,
    pub rel_prec: usize,
}

impl<F: Field> SeriesField<F> {
    pub fn new(base: F, rel_prec: usize) -> Self {
        SeriesField { base, rel_prec }
    }

    /// Restore the invariants: leading zeros stripped into the valuation,
    /// window length equal to prec - val, relative precision capped.
    fn normalize(&self, mut val: i64, mut coeffs: Vec<F::El>, mut prec: i64) -> Series<F::El> {
        // cap knowledge at the provided window
        if prec - val < coeffs.len() as i64 {
            coeffs.truncate((prec - val).max(0) as usize);
        }
        while let Some(first) = coeffs.first() {
            if self.base.is_zero(first) {
                coeffs.remove(0);
                val += 1;
            } else {
                break;
            }
        }
        if coeffs.is_empty() && prec <= val {
            return Series {
                val: prec,
                prec,
                coeffs: vec![],
            };
        }
        if coeffs.is_empty() {
            // all known coefficients vanish: zero to precision prec
            return Series {
                val: prec,
                prec,
                coeffs: vec![],
            };
        }
        // cap relative precision at the working precision
        if prec - val > self.rel_prec as i64 {
            prec = val + self.rel_prec as i64;
            coeffs.truncate(self.rel_prec);
        }
        // pad the window densely
        let want = (prec - val) as usize;
        if coeffs.len() < want {
            coeffs.resize(want, self.base.zero());
        }
        Series { val, prec, coeffs }
    }

    pub fn zero_prec(&self, prec: i64) -> Series<F::El> {
        Series {
            val: prec,
            prec,
            coeffs: vec![],
        }
    }

    /// Series from coefficients starting at t^val, known through the last one.
    pub fn from_coeffs(&self, val: i64, coeffs: Vec<F::El>) -> Series<F::El> {
        let prec = val + coeffs.len() as i64;
        self.normalize(val, coeffs, prec)
    }

    /// The monomial c * t^k at full working precision.
    pub fn monomial(&self, c: F::El, k: i64) -> Series<F::El> {
        if self.base.is_zero(&c) {
            return self.zero_prec(ZERO_PREC);
        }
        let mut coeffs = vec![self.base.zero(); self.rel_prec];
        coeffs[0] = c;
        Series {
            val: k,
            prec: k + self.rel_prec as i64,
            coeffs,
        }
    }

    pub fn t(&self) -> Series<F::El> {
        self.monomial(self.base.one(), 1)
    }

    /// Valuation; None when the series is zero to its precision.
    pub fn valuation(&self, s: &Series<F::El>) -> Option<i64> {
        if s.coeffs.is_empty() {
            None
        } else {
            Some(s.val)
        }
    }

    pub fn leading(&self, s: &Series<F::El>) -> Option<F::El> {
        s.coeffs.first().cloned()
    }

    /// Substitute t -> t^k (k >= 1).
    pub fn inflate(&self, s: &Series<F::El>, k: i64) -> Series<F::El> {
        assert!(k >= 1);
        if s.coeffs.is_empty() {
            return self.zero_prec(s.prec.saturating_mul(k).min(ZERO_PREC));
        }
        let mut coeffs = vec![self.base.zero(); ((s.coeffs.len() - 1) * k as usize) + 1];
        for (i, c) in s.coeffs.iter().enumerate() {
            coeffs[i * k as usize] = c.clone();
        }
        self.normalize(s.val * k, coeffs, s.prec * k - (k - 1))
    }

    /// Truncate knowledge to absolute precision `prec`.
    pub fn truncate(&self, s: &Series<F::El>, prec: i64) -> Series<F::El> {
        if prec >= s.prec {
            return s.clone();
        }
        if prec <= s.val {
            return self.zero_prec(prec);
        }
        let keep = (prec - s.val) as usize;
        self.normalize(s.val, s.coeffs[..keep.min(s.coeffs.len())].to_vec(), prec)
    }

    /// Map coefficients through a base-field function (e.g. Frobenius).
    pub fn map_coeffs(&self, s: &Series<F::El>, f: impl Fn(&F::El) -> F::El) -> Series<F::El> {
        self.normalize(s.val, s.coeffs.iter().map(|c| f(c)).collect(), s.prec)
    }
}

impl<F: Field> Ring for SeriesField<F> {
    type El = Series<F::El>;

    fn zero(&self) -> Series<F::El> {
        self.zero_prec(ZERO_PREC)
    }
    fn one(&self) -> Series<F::El> {
        self.monomial(self.base.one(), 0)
    }
    fn add(&self, a: &Series<F::El>, b: &Series<F::El>) -> Series<F::El> {
        let prec = a.prec.min(b.prec);
        if a.coeffs.is_empty() {
            return self.truncate(b, prec);
        }
        if b.coeffs.is_empty() {
            return self.truncate(a, prec);
        }
        let val = a.val.min(b.val);
        let len = (prec - val).max(0) as usize;
        let mut coeffs = vec![self.base.zero(); len];
        for (i, c) in a.coeffs.iter().enumerate() {
            let k = (a.val - val) as usize + i;
            if k < len {
                coeffs[k] = self.base.add(&coeffs[k], c);
            }
        }
        for (i, c) in b.coeffs.iter().enumerate() {
            let k = (b.val - val) as usize + i;
            if k < len {
                coeffs[k] = self.base.add(&coeffs[k], c);
            }
        }
        self.normalize(val, coeffs, prec)
    }
    fn sub(&self, a: &Series<F::El>, b: &Series<F::El>) -> Series<F::El> {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &Series<F::El>) -> Series<F::El> {
        Series {
            val: a.val,
            prec: a.prec,
            coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect(),
        }
    }
    fn mul(&self, a: &Series<F::El>, b: &Series<F::El>) -> Series<F::El> {
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            let prec = if a.coeffs.is_empty() {
                a.prec.saturating_add(b.val)
            } else {
                b.prec.saturating_add(a.val)
            };
            return self.zero_prec(prec.min(ZERO_PREC));
        }
        let val = a.val + b.val;
        let ra = a.prec - a.val;
        let rb = b.prec - b.val;
        let rel = ra.min(rb).min(self.rel_prec as i64).max(0) as usize;
        let mut coeffs = vec![self.base.zero(); rel];
        for (i, c) in a.coeffs.iter().enumerate() {
            if i >= rel {
                break;
            }
            if self.base.is_zero(c) {
                continue;
            }
            for (j, d) in b.coeffs.iter().enumerate() {
                if i + j >= rel {
                    break;
                }
                coeffs[i + j] = self.base.mul_add(c, d, &coeffs[i + j]);
            }
        }
        self.normalize(val, coeffs, val + rel as i64)
    }
    fn from_i64(&self, n: i64) -> Series<F::El> {
        self.monomial(self.base.from_i64(n), 0)
    }
    fn is_zero(&self, a: &Series<F::El>) -> bool {
        a.coeffs.is_empty()
    }
    fn eq_el(&self, a: &Series<F::El>, b: &Series<F::El>) -> bool {
        self.is_zero(&self.sub(a, b))
    }
}

impl<F: Field> Field for SeriesField<F> {
    fn try_inv(&self, a: &Series<F::El>) -> Option<Series<F::El>> {
        if a.coeffs.is_empty() {
            return None;
        }
        let lead_inv = self.base.try_inv(&a.coeffs[0])?;
        let rel = ((a.prec - a.val) as usize).min(self.rel_prec);
        let mut inv = vec![self.base.zero(); rel];
        inv[0] = lead_inv.clone();
        for k in 1..rel {
            let mut acc = self.base.zero();
            for j in 0..k {
                if let Some(ak) = a.coeffs.get(k - j) {
                    acc = self.base.mul_add(&inv[j], ak, &acc);
                }
            }
            inv[k] = self.base.neg(&self.base.mul(&acc, &lead_inv));
        }
        Some(self.normalize(-a.val, inv, -a.val + rel as i64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fp::Fp;

    #[test]
    fn mul_and_inverse() {
        let fp = Fp::new(101).unwrap();
        let sf = SeriesField::new(fp.clone(), 8);
        let s = sf.from_coeffs(-2, vec![fp.one(), fp.one(), fp.from_i64(3)]);
        let inv = sf.inv(&s);
        let prod = sf.mul(&s, &inv);
        assert_eq!(sf.valuation(&prod), Some(0));
        assert!(fp.is_one(&prod.coeffs[0]));
        assert!(prod.coeffs[1..].iter().all(|c| fp.is_zero(c)));
    }

    #[test]
    fn monomial_knowledge_survives_addition_of_zero() {
        let fp = Fp::new(101).unwrap();
        let sf = SeriesField::new(fp.clone(), 40);
        let one = sf.one();
        let z = sf.mul_i64(&sf.zero(), 2);
        let s = sf.add(&one, &z);
        assert_eq!(s.prec, 40);
        let m = sf.mul(&s, &sf.inv(&one));
        assert_eq!(m.prec, 40);
    }

    #[test]
    fn precision_tracks_through_cancellation() {
        let fp = Fp::new(101).unwrap();
        let sf = SeriesField::new(fp.clone(), 6);
        let a = sf.from_coeffs(0, vec![fp.one(), fp.from_i64(5)]);
        let b = sf.from_coeffs(0, vec![fp.one(), fp.from_i64(7)]);
        let d = sf.sub(&a, &b);
        assert_eq!(sf.valuation(&d), Some(1));
        assert_eq!(sf.leading(&d), Some(fp.from_i64(-2)));
    }

    #[test]
    fn inflate_scales_valuation() {
        let fp = Fp::new(13).unwrap();
        let sf = SeriesField::new(fp.clone(), 10);
        let s = sf.from_coeffs(1, vec![fp.one(), fp.one()]);
        let s3 = sf.inflate(&s, 3);
        assert_eq!(sf.valuation(&s3), Some(3));
        assert_eq!(s3.coeff_of(&fp, 6), fp.one());
        assert_eq!(s3.coeff_of(&fp, 4), fp.zero());
    }
}
