//! Extension fields F_{p^d}, represented as F_p[z]/(m(z)) for a canonical
//! irreducible m.
//!
//! The defining polynomial is chosen deterministically (smallest in
//! lexicographic order on the non-leading coefficient vector) so that
//! independent runs and parallel workers agree on the representation.
//! Elements are fixed-length coefficient vectors in Montgomery form.

use super::fp::Fp;
use super::poly;
use super::ring::{Field, Ring};
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::sync::Mutex;

static FIELD_CACHE: Mutex<Option<HashMap<(u64, usize), Fq>>> = Mutex::new(None);
static EMBED_CACHE: Mutex<Option<HashMap<(u64, usize, usize), FqEmbed>>> = Mutex::new(None);

/// Context for F_{p^d} = F_p[z]/(m(z)).
#[derive(Clone, Debug, PartialEq)]
pub struct Fq {
    base: Fp,
    /// Monic irreducible of degree d; length d+1, Montgomery coefficients.
    modulus: Vec<u64>,
    d: usize,
}

impl Fq {
    /// The canonical degree-d extension of F_p (memoized process-wide).
    pub fn new(p: u64, d: usize) -> Result<Fq> {
        if let Some(f) = FIELD_CACHE
            .lock()
            .unwrap()
            .as_ref()
            .and_then(|m| m.get(&(p, d)).cloned())
        {
            return Ok(f);
        }
        let f = Fq::new_uncached(p, d)?;
        FIELD_CACHE
            .lock()
            .unwrap()
            .get_or_insert_with(HashMap::new)
            .insert((p, d), f.clone());
        Ok(f)
    }

    fn new_uncached(p: u64, d: usize) -> Result<Fq> {
        assert!(d >= 1);
        let base = Fp::new(p)?;
        if d == 1 {
            // z - 0 would not be canonical; use m(z) = z so elements are constants.
            // We instead store modulus z + 0 ... but a degree-1 extension is F_p
            // itself; modulus z keeps reduction trivial.
            let modulus = vec![0, base.one()];
            return Ok(Fq { base, modulus, d: 1 });
        }
        let modulus = canonical_irreducible(&base, d);
        Ok(Fq { base, modulus, d })
    }

    /// Build from an explicitly supplied monic irreducible (Montgomery coeffs).
    pub fn with_modulus(base: Fp, modulus: Vec<u64>) -> Fq {
        let d = modulus.len() - 1;
        debug_assert!(base.is_one(modulus.last().unwrap()));
        Fq { base, modulus, d }
    }

    pub fn base(&self) -> &Fp {
        &self.base
    }
    pub fn p(&self) -> u64 {
        self.base.modulus()
    }
    pub fn degree(&self) -> usize {
        self.d
    }
    pub fn modulus_poly(&self) -> &[u64] {
        &self.modulus
    }

    /// q = p^d as u128 (may exceed u64 for large d).
    pub fn order(&self) -> u128 {
        let mut q = 1u128;
        for _ in 0..self.d {
            q = q.saturating_mul(self.p() as u128);
        }
        q
    }

    /// The generator z of the extension (image of the residue class of z).
    pub fn gen(&self) -> Vec<u64> {
        let mut v = vec![0; self.d];
        if self.d == 1 {
            v[0] = 0; // z reduces to 0 mod z
        } else {
            v[1] = self.base.one();
        }
        v
    }

    /// Embed a base-field element.
    pub fn from_base(&self, c: u64) -> Vec<u64> {
        let mut v = vec![0; self.d];
        v[0] = c;
        v
    }

    /// Constant-term extraction; panics if the element is not in F_p.
    pub fn to_base(&self, a: &[u64]) -> u64 {
        assert!(a[1..].iter().all(|&c| c == 0), "element not in base field");
        a[0]
    }

    pub fn is_in_base(&self, a: &[u64]) -> bool {
        a[1..].iter().all(|&c| c == 0)
    }

    /// Reduce an arbitrary-length coefficient vector mod the defining poly.
    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        let f = &self.base;
        while v.len() > self.d {
            let top = v.pop().unwrap();
            if top == 0 {
                continue;
            }
            let k = v.len() - self.d;
            for i in 0..self.d {
                let t = f.mul(&top, &self.modulus[i]);
                v[k + i] = f.sub(&v[k + i], &t);
            }
        }
        v.resize(self.d, 0);
        v
    }

    /// Frobenius x -> x^(p^k).
    pub fn frob(&self, a: &[u64], k: usize) -> Vec<u64> {
        let mut out = a.to_vec();
        for _ in 0..(k % self.d.max(1)) {
            out = self.pow_u64(&out, self.p());
        }
        out
    }

    /// x^e for a large exponent given as big-endian bit iterator.
    pub fn pow_bits(&self, a: &[u64], bits: impl Iterator<Item = bool>) -> Vec<u64> {
        let mut acc = self.one();
        for b in bits {
            acc = self.mul(&acc, &acc);
            if b {
                acc = self.mul(&acc, &a.to_vec());
            }
        }
        acc
    }

    /// Lift to ordinary residues (for display / hashing / serialization).
    pub fn lift(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|&c| self.base.lift(c)).collect()
    }

    pub fn from_lifted(&self, a: &[u64]) -> Vec<u64> {
        let mut v: Vec<u64> = a.iter().map(|&c| self.base.to_el(c)).collect();
        v.resize(self.d, 0);
        v
    }
}

impl Ring for Fq {
    type El = Vec<u64>;
    fn zero(&self) -> Vec<u64> {
        vec![0; self.d]
    }
    fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.d];
        v[0] = if self.d == 1 && self.modulus[0] == 0 && self.modulus.len() == 2 {
            // F_p represented with modulus z: constants live in slot 0.
            self.base.one()
        } else {
            self.base.one()
        };
        v
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| self.base.add(x, y))
            .collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| self.base.sub(x, y))
            .collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let f = &self.base;
        if self.d == 1 {
            return vec![f.mul(&a[0], &b[0])];
        }
        let mut prod = vec![0u64; 2 * self.d - 1];
        for (i, ai) in a.iter().enumerate() {
            if *ai == 0 {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                prod[i + j] = f.add(&prod[i + j], &f.mul(ai, bj));
            }
        }
        self.reduce(prod)
    }
    fn from_i64(&self, n: i64) -> Vec<u64> {
        self.from_base(self.base.from_i64(n))
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }
}

impl Field for Fq {
    fn try_inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return None;
        }
        if self.d == 1 {
            return self.base.try_inv(&a[0]).map(|x| vec![x]);
        }
        // Extended Euclid against the defining polynomial.
        let mut av = a.clone();
        poly::trim(&self.base, &mut av);
        let (g, s, _) = poly::xgcd(&self.base, &av, &self.modulus);
        if poly::deg(&g) != 0 {
            return None;
        }
        let mut out = s;
        out.resize(self.d, 0);
        Some(out)
    }
}

/// The canonical irreducible of degree d over F_p: produced by a search
/// through a PRG stream seeded by (p, d), so every process agrees on the
/// polynomial. Small-coefficient candidates are tried first.
fn canonical_irreducible(f: &Fp, d: usize) -> Vec<u64> {
    let p = f.modulus();
    // small deterministic box first: all coefficient vectors with entries < 3
    let small_bound = 3u64.min(p);
    let count = small_bound.pow(d.min(12) as u32);
    if d <= 12 {
        for counter in 0..count {
            let mut c = counter;
            let mut m: Vec<u64> = Vec::with_capacity(d + 1);
            for _ in 0..d {
                m.push(f.to_el(c % small_bound));
                c /= small_bound;
            }
            m.push(f.one());
            if is_irreducible(f, &m) {
                return m;
            }
        }
    }
    // seeded stream
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(
        0x1005_u64.wrapping_mul(p).wrapping_add(d as u64),
    );
    loop {
        let mut m: Vec<u64> = (0..d).map(|_| f.to_el(rng.gen_range(0..p))).collect();
        m.push(f.one());
        if is_irreducible(f, &m) {
            return m;
        }
    }
}

/// Irreducibility over F_p: x^(p^d) = x mod m, and x^(p^(d/r)) - x coprime to m
/// for every prime r | d.
pub fn is_irreducible(f: &Fp, m: &[u64]) -> bool {
    let d = m.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let p = f.modulus();
    let x = poly::x(f);
    // x^(p^k) mod m by iterating the p-power map.
    let mut xp = vec![x.clone()];
    for _ in 0..d {
        let prev = xp.last().unwrap();
        xp.push(frob_compose(f, prev, m, p));
    }
    // x^(p^d) must equal x.
    if xp[d] != x {
        return false;
    }
    let mut dd = d;
    let mut primes = vec![];
    let mut r = 2;
    while r * r <= dd {
        if dd % r == 0 {
            primes.push(r);
            while dd % r == 0 {
                dd /= r;
            }
        }
        r += 1;
    }
    if dd > 1 {
        primes.push(dd);
    }
    for r in primes {
        let k = d / r;
        let diff = poly::sub(f, &xp[k], &x);
        let g = poly::gcd(f, &diff, m);
        if poly::deg(&g) != 0 {
            return false;
        }
    }
    true
}

/// Compute h(x)^p mod m given h = previous Frobenius image... here simply
/// raises the polynomial x-image: returns g^p mod m for g of degree < deg m.
fn frob_compose(f: &Fp, g: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    poly::powmod_u64(f, g, p, m)
}

/// An embedding F_{p^a} -> F_{p^b} for a | b, determined by the canonical
/// (lex-least lifted) root of the source modulus in the target field.
#[derive(Clone, Debug)]
pub struct FqEmbed {
    pub from: Fq,
    pub to: Fq,
    gen_image: Vec<u64>,
}

impl FqEmbed {
    pub fn new(from: &Fq, to: &Fq) -> Result<FqEmbed> {
        let key = (from.p(), from.degree(), to.degree());
        if let Some(e) = EMBED_CACHE
            .lock()
            .unwrap()
            .as_ref()
            .and_then(|m| m.get(&key).cloned())
        {
            return Ok(e);
        }
        let e = FqEmbed::new_uncached(from, to)?;
        EMBED_CACHE
            .lock()
            .unwrap()
            .get_or_insert_with(HashMap::new)
            .insert(key, e.clone());
        Ok(e)
    }

    fn new_uncached(from: &Fq, to: &Fq) -> Result<FqEmbed> {
        if from.p() != to.p() || to.degree() % from.degree() != 0 {
            return Err(Error::Algebra("incompatible embedding".into()));
        }
        if from.degree() == 1 {
            return Ok(FqEmbed {
                from: from.clone(),
                to: to.clone(),
                gen_image: to.zero(),
            });
        }
        // Map the defining polynomial into `to` and find its roots there.
        let coeffs: Vec<Vec<u64>> = from
            .modulus_poly()
            .iter()
            .map(|&c| to.from_base(c))
            .collect();
        let mut roots = super::factor::roots(to, &coeffs, 1);
        if roots.is_empty() {
            return Err(Error::Algebra("no root found for embedding".into()));
        }
        roots.sort_by_key(|r| to.lift(r));
        Ok(FqEmbed {
            from: from.clone(),
            to: to.clone(),
            gen_image: roots.remove(0),
        })
    }

    pub fn map(&self, a: &[u64]) -> Vec<u64> {
        // Horner in the generator image.
        let mut acc = self.to.zero();
        for c in a.iter().rev() {
            acc = self.to.mul(&acc, &self.gen_image);
            let cc = self.to.from_base(*c);
            acc = self.to.add(&acc, &cc);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_field_axioms() {
        let fq = Fq::new(29, 2).unwrap();
        let a = fq.from_lifted(&[3, 7]);
        let b = fq.from_lifted(&[11, 2]);
        let c = fq.from_lifted(&[5, 28]);
        let ab_c = fq.mul(&fq.mul(&a, &b), &c);
        let a_bc = fq.mul(&a, &fq.mul(&b, &c));
        assert_eq!(ab_c, a_bc);
        let ai = fq.inv(&a);
        assert!(fq.is_one(&fq.mul(&a, &ai)));
    }

    #[test]
    fn frobenius_is_field_automorphism() {
        let fq = Fq::new(13, 3).unwrap();
        let a = fq.from_lifted(&[4, 9, 2]);
        let b = fq.from_lifted(&[1, 5, 12]);
        let fr = |x: &Vec<u64>| fq.frob(x, 1);
        assert_eq!(fr(&fq.add(&a, &b)), fq.add(&fr(&a), &fr(&b)));
        assert_eq!(fr(&fq.mul(&a, &b)), fq.mul(&fr(&a), &fr(&b)));
        // order d
        assert_eq!(fq.frob(&fq.frob(&a, 1), 2), a);
    }

    #[test]
    fn embedding_respects_ops() {
        let f2 = Fq::new(11, 2).unwrap();
        let f4 = Fq::new(11, 4).unwrap();
        let emb = FqEmbed::new(&f2, &f4).unwrap();
        let a = f2.from_lifted(&[3, 8]);
        let b = f2.from_lifted(&[10, 4]);
        assert_eq!(
            emb.map(&f2.mul(&a, &b)),
            f4.mul(&emb.map(&a), &emb.map(&b))
        );
    }
}
