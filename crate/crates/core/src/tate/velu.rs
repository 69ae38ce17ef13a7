//! Order-n subgroups of a Tate curve over a finite field, Velu quotients, and
//! the Hecke action on moduli points
//!   T_n(E_{b,c}, (0,0)) = sum over C of (E_{b,c}/C, (0,0)+C)
//! where C ranges over the order-n subgroups meeting <(0,0)> trivially.
//!
//! Subgroups are enumerated through the n-division polynomial: its roots over
//! a splitting extension are grouped into kernels by the x-coordinate
//! multiplication maps, which are computed with the division-polynomial
//! recurrences in the quadratic extension by psi_2 (no y-coordinates needed).

use super::eds::{Eds, ExactDivRing, PolyRing, QuadPsiRing};
use super::normalize::tate_normalize;
use super::{CurveOps, Point, TateCurve, Weierstrass};
use crate::algebra::fq::{Fq, FqEmbed};
use crate::algebra::poly;
use crate::algebra::ring::{Field, Ring};
use crate::error::{Error, Result};

type El = Vec<u64>;

/// An order-n subgroup given by its kernel polynomial over the splitting
/// field (monic, vanishing on the x-coordinates of the nonzero points).
#[derive(Clone, Debug)]
pub struct KernelSubgroup {
    pub order: u32,
    pub kernel_poly: Vec<El>,
}

/// All order-n subgroups of E_{b,c} over the algebraic closure, presented
/// over a common splitting field.
pub struct SubgroupData {
    /// Splitting field F_{q^M}, with y-coordinates available (degree 2M over q).
    pub field: Fq,
    /// Embedding of the base field into `field`.
    pub embed: FqEmbed,
    pub kernels: Vec<KernelSubgroup>,
}

/// psi_2^2(x) = 4x^3 + b2 x^2 + 2 b4 x + b6 over the field of w.
fn psi2_squared<F: Field>(f: &F, ops: &CurveOps<F>) -> Vec<F::El> {
    let (b2, b4, b6, _) = ops.b_invariants();
    let mut t = vec![b6, f.mul_i64(&b4, 2), b2, f.from_i64(4)];
    poly::trim(f, &mut t);
    t
}

/// psi_3(x) = 3x^4 + b2 x^3 + 3 b4 x^2 + 3 b6 x + b8.
fn psi3<F: Field>(f: &F, ops: &CurveOps<F>) -> Vec<F::El> {
    let (b2, b4, b6, b8) = ops.b_invariants();
    let mut t = vec![b8, f.mul_i64(&b6, 3), f.mul_i64(&b4, 3), b2, f.from_i64(3)];
    poly::trim(f, &mut t);
    t
}

/// psi_4 / psi_2 (x) = 2x^6 + b2 x^5 + 5 b4 x^4 + 10 b6 x^3 + 10 b8 x^2
///                     + (b2 b8 - b4 b6) x + (b4 b8 - b6^2).
fn psi4_over_psi2<F: Field>(f: &F, ops: &CurveOps<F>) -> Vec<F::El> {
    let (b2, b4, b6, b8) = ops.b_invariants();
    let c0 = f.sub(&f.mul(&b4, &b8), &f.mul(&b6, &b6));
    let c1 = f.sub(&f.mul(&b2, &b8), &f.mul(&b4, &b6));
    let mut t = vec![
        c0,
        c1,
        f.mul_i64(&b8, 10),
        f.mul_i64(&b6, 10),
        f.mul_i64(&b4, 5),
        b2,
        f.from_i64(2),
    ];
    poly::trim(f, &mut t);
    t
}

/// The n-division polynomial of the curve as an x-polynomial pair
/// (alpha, beta) meaning alpha(x) + beta(x) psi_2. For odd n the beta part
/// vanishes and alpha is the usual psi_n(x).
pub fn division_poly_x(fq: &Fq, w: &Weierstrass<El>, n: u32) -> (Vec<El>, Vec<El>) {
    let ops = CurveOps::new(fq, w.clone());
    let pring = PolyRing { base: fq.clone() };
    let t = psi2_squared(fq, &ops);
    let qring = QuadPsiRing {
        base: pring,
        t: t.clone(),
    };
    let w2 = (vec![], vec![fq.one()]); // psi_2 = w
    let w3 = (psi3(fq, &ops), vec![]);
    let w4 = (vec![], psi4_over_psi2(fq, &ops));
    let mut eds = Eds::new(&qring, w2, w3, w4);
    let _ = t;
    eds.get(n as u64)
}

/// Scalar division-polynomial values at a fixed x-coordinate xi: returns the
/// EDS in the quadratic ring F[w]/(w^2 - psi2^2(xi)).
struct PointEds<'a> {
    ring: QuadPsiRing<Fq>,
    eds: Eds<'a, QuadPsiRing<Fq>>,
}

/// x([k]T) for T a point with x(T) = xi:
/// x(kT) = xi - psi_{k-1} psi_{k+1} / psi_k^2 (values at T).
fn x_of_multiple(
    fq: &Fq,
    eds: &mut Eds<QuadPsiRing<Fq>>,
    ring: &QuadPsiRing<Fq>,
    xi: &El,
    k: u32,
) -> El {
    let pk = eds.get(k as u64);
    let pk2 = ring.mul(&pk, &pk);
    let pm = eds.get((k - 1) as u64);
    let pp = eds.get((k + 1) as u64);
    let num = ring.mul(&pm, &pp);
    // both num and pk2 lie in the base (beta = 0)
    debug_assert!(fq.is_zero(&num.1) && fq.is_zero(&pk2.1));
    fq.sub(xi, &fq.div(&num.0, &pk2.0))
}

/// Enumerate all order-n subgroups (n prime, gcd(n, q) = 1) of the Tate curve
/// whose intersection with <(0,0)> is trivial; `marked_order` is the order N
/// of the marked point.
pub fn kernel_subgroups(
    fq: &Fq,
    curve: &TateCurve<El>,
    n: u32,
    marked_order: u32,
) -> Result<SubgroupData> {
    if !crate::algebra::fp::is_prime_u64(n as u64) {
        return Err(Error::Moduli(format!(
            "composite Hecke index n = {n}; reduce through the recursions first"
        )));
    }
    if fq.p() == n as u64 {
        return Err(Error::Moduli("n equals the field characteristic".into()));
    }
    let w = curve.to_weierstrass(fq);
    let ops = CurveOps::new(fq, w.clone());

    // splitting field of the relevant x-polynomial, doubled for y-coordinates
    let xpoly: Vec<El> = if n == 2 {
        psi2_squared(fq, &ops)
    } else {
        let (alpha, beta) = division_poly_x(fq, &w, n);
        debug_assert!(beta.is_empty());
        alpha
    };
    let (_, facs) = crate::algebra::factor::factor(fq, &xpoly, 0x5eed)?;
    let mut m = 1usize;
    for (g, _) in &facs {
        m = num_integer::lcm(m, poly::deg(g) as usize);
    }
    let big = Fq::new(fq.p(), 2 * m * fq.degree())?;
    let embed = FqEmbed::new(fq, &big)?;

    // roots of the x-polynomial over the big field
    let xbig: Vec<El> = xpoly.iter().map(|c| embed.map(c)).collect();
    let mut roots = crate::algebra::factor::roots(&big, &xbig, 0x5eed);
    roots.sort_by_key(|r| big.lift(r));

    let wbig = Weierstrass {
        a1: embed.map(&w.a1),
        a2: embed.map(&w.a2),
        a3: embed.map(&w.a3),
        a4: embed.map(&w.a4),
        a6: embed.map(&w.a6),
    };
    let ops_big = CurveOps::new(&big, wbig);

    let mut kernels: Vec<KernelSubgroup> = vec![];
    if n == 2 {
        for r in &roots {
            kernels.push(KernelSubgroup {
                order: 2,
                kernel_poly: vec![big.neg(r), big.one()],
            });
        }
    } else {
        let t_all = psi2_squared(&big, &ops_big);
        let mut used = vec![false; roots.len()];
        for i in 0..roots.len() {
            if used[i] {
                continue;
            }
            let xi = roots[i].clone();
            let tval = poly::eval(&big, &t_all, &xi);
            let ring = QuadPsiRing {
                base: big.clone(),
                t: tval,
            };
            // seeds at the point: psi_2 = w, psi_3 = value, psi_4 = psi4/psi2 * w
            let w2 = (big.zero(), big.one());
            let w3 = (poly::eval(&big, &psi3(&big, &ops_big), &xi), big.zero());
            let w4 = (
                big.zero(),
                poly::eval(&big, &psi4_over_psi2(&big, &ops_big), &xi),
            );
            let mut eds = Eds::new(&ring, w2, w3, w4);
            let mut xs = vec![xi.clone()];
            for k in 2..=(n - 1) / 2 {
                xs.push(x_of_multiple(&big, &mut eds, &ring, &xi, k));
            }
            // mark all roots of this kernel as used
            for x in &xs {
                for (j, r) in roots.iter().enumerate() {
                    if r == x {
                        used[j] = true;
                    }
                }
            }
            // kernel polynomial = prod (X - x_k)
            let mut kp = vec![big.one()];
            for x in &xs {
                kp = poly::mul(&big, &kp, &[big.neg(x), big.one()]);
            }
            kernels.push(KernelSubgroup {
                order: n,
                kernel_poly: kp,
            });
        }
    }
    let expected = n as usize + 1;
    if kernels.len() != expected {
        return Err(Error::Moduli(format!(
            "expected {expected} subgroups, found {}",
            kernels.len()
        )));
    }
    // drop kernels meeting <(0,0)>: only possible when n | N, namely the
    // order-n subgroup of <(0,0)> generated by (N/n) * (0,0).
    if marked_order % n == 0 {
        let p0 = Point::Affine(fq.zero(), fq.zero());
        let mult = ops.scalar_mul((marked_order / n) as u64, &p0);
        let (mx, _) = mult
            .xy()
            .ok_or_else(|| Error::Moduli("marked point order inconsistent".into()))?;
        let mx_big = embed.map(mx);
        kernels.retain(|k| !big.is_zero(&poly::eval(&big, &k.kernel_poly, &mx_big)));
        if kernels.len() != expected - 1 {
            return Err(Error::Moduli("marked-subgroup exclusion failed".into()));
        }
    }
    Ok(SubgroupData {
        field: big,
        embed,
        kernels,
    })
}

/// All affine points of the kernel over the splitting field.
fn kernel_points(big: &Fq, w: &Weierstrass<El>, kernel: &KernelSubgroup) -> Result<Vec<Point<El>>> {
    let mut pts = vec![];
    let roots = crate::algebra::factor::roots(big, &kernel.kernel_poly, 0xfeed);
    if roots.len() != poly::deg(&kernel.kernel_poly) as usize {
        return Err(Error::Moduli("kernel polynomial does not split".into()));
    }
    for xi in roots {
        // y^2 + (a1 xi + a3) y - (xi^3 + a2 xi^2 + a4 xi + a6) = 0
        let lin = poly::eval(big, &[w.a3.clone(), w.a1.clone()], &xi);
        let xi2 = big.mul(&xi, &xi);
        let mut rhs = big.mul(&xi2, &xi);
        rhs = big.add(&rhs, &big.mul(&w.a2, &xi2));
        rhs = big.add(&rhs, &big.mul(&w.a4, &xi));
        rhs = big.add(&rhs, &w.a6);
        let quad = vec![big.neg(&rhs), lin, big.one()];
        let ys = crate::algebra::factor::roots(big, &quad, 0xfeed);
        if ys.is_empty() {
            return Err(Error::Moduli(
                "kernel point y-coordinate outside the splitting field".into(),
            ));
        }
        for y in ys {
            pts.push(Point::Affine(xi.clone(), y));
        }
    }
    Ok(pts)
}

/// Velu quotient E -> E/C with the pushforward of the given points. The
/// kernel polynomial must split (with y-coordinates) over `big`.
pub fn velu_quotient(
    big: &Fq,
    w: &Weierstrass<El>,
    kernel: &KernelSubgroup,
    push: &[Point<El>],
) -> Result<(Weierstrass<El>, Vec<Point<El>>)> {
    if poly::deg(&kernel.kernel_poly) <= 0 {
        // trivial subgroup: identity isogeny
        return Ok((w.clone(), push.to_vec()));
    }
    let pts = kernel_points(big, w, kernel)?;
    let ops = CurveOps::new(big, w.clone());
    for p in push {
        if pts.contains(p) {
            return Err(Error::Moduli("marked point lies in the kernel".into()));
        }
    }
    // codomain via the half-set sums
    let (b2, _, _, _) = ops.b_invariants();
    let mut v = big.zero();
    let mut wsum = big.zero();
    let mut seen_x: Vec<El> = vec![];
    for q in &pts {
        let (xq, yq) = q.xy().unwrap();
        if seen_x.contains(xq) {
            continue;
        }
        seen_x.push(xq.clone());
        let gx = {
            let mut g = big.mul_i64(&big.mul(xq, xq), 3);
            g = big.add(&g, &big.mul_i64(&big.mul(&w.a2, xq), 2));
            g = big.add(&g, &w.a4);
            big.sub(&g, &big.mul(&w.a1, yq))
        };
        let gy = {
            let mut g = big.mul_i64(yq, -2);
            g = big.sub(&g, &big.mul(&w.a1, xq));
            big.sub(&g, &w.a3)
        };
        let is_two_torsion = big.is_zero(&gy);
        let vq = if is_two_torsion {
            gx.clone()
        } else {
            big.sub(&big.mul_i64(&gx, 2), &big.mul(&w.a1, &gy))
        };
        let uq = big.mul(&gy, &gy);
        v = big.add(&v, &vq);
        wsum = big.add(&wsum, &big.add(&uq, &big.mul(xq, &vq)));
    }
    let a4p = big.sub(&w.a4, &big.mul_i64(&v, 5));
    let a6p = big.sub(
        &big.sub(&w.a6, &big.mul(&b2, &v)),
        &big.mul_i64(&wsum, 7),
    );
    let wq = Weierstrass {
        a1: w.a1.clone(),
        a2: w.a2.clone(),
        a3: w.a3.clone(),
        a4: a4p,
        a6: a6p,
    };
    let ops_q = CurveOps::new(big, wq.clone());
    // pushforward: X' = x + sum over kernel (x(P+Q) - x(Q)), same for y
    let mut images = vec![];
    for p in push {
        let (px, py) = p
            .xy()
            .ok_or_else(|| Error::Moduli("cannot push the point at infinity".into()))?;
        let mut nx = px.clone();
        let mut ny = py.clone();
        for q in &pts {
            let sum = ops.add(p, q);
            let (sx, sy) = sum
                .xy()
                .ok_or_else(|| Error::Moduli("degenerate kernel translate".into()))?;
            let (qx, qy) = q.xy().unwrap();
            nx = big.add(&nx, &big.sub(sx, qx));
            ny = big.add(&ny, &big.sub(sy, qy));
        }
        let img = Point::Affine(nx, ny);
        if !ops_q.is_on_curve(&img) {
            return Err(Error::Moduli("isogeny image left the quotient curve".into()));
        }
        images.push(img);
    }
    Ok((wq, images))
}

/// The Hecke sum T_n on a moduli point: quotient Tate curves over the common
/// splitting field, one per admissible subgroup, in a fixed deterministic
/// order (Galois-conjugate subgroups all appear).
pub fn hecke_on_moduli_point(
    fq: &Fq,
    curve: &TateCurve<El>,
    n: u32,
    marked_order: u32,
) -> Result<(Fq, Vec<TateCurve<El>>)> {
    if n == 1 {
        let big = Fq::new(fq.p(), fq.degree())?;
        let embed = FqEmbed::new(fq, &big)?;
        return Ok((
            big,
            vec![TateCurve {
                b: embed.map(&curve.b),
                c: embed.map(&curve.c),
            }],
        ));
    }
    let data = kernel_subgroups(fq, curve, n, marked_order)?;
    let big = data.field;
    let w = Weierstrass {
        a1: data.embed.map(&fq.sub(&fq.one(), &curve.c)),
        a2: data.embed.map(&fq.neg(&curve.b)),
        a3: data.embed.map(&fq.neg(&curve.b)),
        a4: big.zero(),
        a6: big.zero(),
    };
    let p0 = Point::Affine(big.zero(), big.zero());
    let mut out = vec![];
    for k in &data.kernels {
        let (wq, img) = velu_quotient(&big, &w, k, &[p0.clone()])?;
        let (tc, _) = tate_normalize(&big, &wq, &img[0])?;
        out.push(tc);
    }
    Ok((big, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tate::fn_poly;
    use crate::tate::marked_point_order;

    /// A Tate curve over F_q whose marked point has exact order N, found by
    /// sampling roots of f_N.
    fn fixture_curve(p: u64, n: u32) -> (Fq, TateCurve<El>) {
        let fq = Fq::new(p, 1).unwrap();
        let f = fn_poly::fn_in_xy(n).unwrap();
        for x0 in 2..200u64 {
            let spec: Vec<El> = {
                use crate::algebra::zpoly::zx_eval;
                let mut v: Vec<u64> = f
                    .iter()
                    .map(|cy| {
                        let e = zx_eval(cy, &num_bigint::BigInt::from(x0));
                        crate::tate::coords::from_bigint(fq.base(), &e)
                    })
                    .collect();
                poly::trim(fq.base(), &mut v);
                v.iter().map(|c| fq.from_base(*c)).collect()
            };
            if poly::deg(&spec) < 1 {
                continue;
            }
            for root in crate::algebra::factor::roots(&fq, &spec, 3) {
                let x = fq.base().to_el(x0);
                let y = fq.to_base(&root);
                if let Some((b, c)) = crate::tate::coords::point_xy_to_bc(fq.base(), &x, &y) {
                    let disc = crate::tate::tate_discriminant(fq.base(), &b, &c);
                    if fq.base().is_zero(&disc) {
                        continue;
                    }
                    let curve = TateCurve { b, c };
                    if marked_point_order(fq.base(), &curve, (n + 1) as u64) == Some(n as u64) {
                        return (
                            fq.clone(),
                            TateCurve {
                                b: fq.from_base(curve.b),
                                c: fq.from_base(curve.c),
                            },
                        );
                    }
                }
            }
        }
        panic!("no fixture curve found");
    }

    #[test]
    fn subgroup_counts() {
        let (fq, e) = fixture_curve(10007, 11);
        // n = 2, N odd: all 3 subgroups qualify
        let d2 = kernel_subgroups(&fq, &e, 2, 11).unwrap();
        assert_eq!(d2.kernels.len(), 3);
        // n = 3: 4 subgroups
        let d3 = kernel_subgroups(&fq, &e, 3, 11).unwrap();
        assert_eq!(d3.kernels.len(), 4);
        // n = N = 11: the subgroup generated by the marked point is excluded
        let d11 = kernel_subgroups(&fq, &e, 11, 11).unwrap();
        assert_eq!(d11.kernels.len(), 11);
        // composite n is refused
        assert!(kernel_subgroups(&fq, &e, 6, 11).is_err());
    }

    #[test]
    fn hecke_summands_satisfy_fn() {
        // each T_2 summand still carries a point of exact order N, i.e.
        // satisfies F_N = 0
        let (fq, e) = fixture_curve(10007, 11);
        let (big, summands) = hecke_on_moduli_point(&fq, &e, 2, 11).unwrap();
        assert_eq!(summands.len(), 3);
        let f11 = fn_poly::raw_order_polynomial(11).unwrap();
        for s in &summands {
            let v = crate::tate::coords::eval_zxy(&big, &f11, &s.b, &s.c);
            assert!(big.is_zero(&v), "summand violates F_11");
            assert_eq!(marked_point_order(&big, s, 12), Some(11));
        }
    }

    #[test]
    fn hecke_commutes_with_frobenius() {
        let (fq, e) = fixture_curve(10007, 11);
        let (big, summands) = hecke_on_moduli_point(&fq, &e, 3, 11).unwrap();
        assert_eq!(summands.len(), 4);
        // the multiset of (b, c) pairs is stable under the q-power Frobenius
        let frob = |t: &TateCurve<El>| TateCurve {
            b: big.frob(&t.b, fq.degree()),
            c: big.frob(&t.c, fq.degree()),
        };
        for s in &summands {
            let fs = frob(s);
            assert!(
                summands.iter().any(|t| *t == fs),
                "Frobenius image missing from the Hecke sum"
            );
        }
    }

    #[test]
    fn velu_quotient_point_count_oracle() {
        // Brute-force oracle over a small field: the quotient map sends
        // E(F_p) onto an n-to-1 image inside E'(F_p), and |E'(F_p)| = |E(F_p)|.
        // Curves with marked order 5 satisfy f_5 = b - c.
        let (fq, e) = {
            let fq = Fq::new(211, 1).unwrap();
            let mut found = None;
            for t in 1..100u64 {
                let b = fq.from_i64(t as i64);
                let e = TateCurve {
                    b: b.clone(),
                    c: b.clone(),
                };
                let disc = crate::tate::tate_discriminant(&fq, &e.b, &e.c);
                if !fq.is_zero(&disc) && marked_point_order(&fq, &e, 6) == Some(5) {
                    found = Some(e);
                    break;
                }
            }
            (fq, found.unwrap())
        };
        let w = e.to_weierstrass(&fq);
        let ops = CurveOps::new(&fq, w.clone());
        let count = |w: &Weierstrass<El>| -> usize {
            let ops = CurveOps::new(&fq, w.clone());
            let mut c = 1; // infinity
            for x in 0..fq.p() {
                for y in 0..fq.p() {
                    let pt = Point::Affine(fq.from_base(fq.base().to_el(x)), fq.from_base(fq.base().to_el(y)));
                    if ops.is_on_curve(&pt) {
                        c += 1;
                    }
                }
            }
            c
        };
        let n_e = count(&w);
        // the subgroup generated by the marked point (order 5, rational)
        let p0 = Point::Affine(fq.zero(), fq.zero());
        let mut xs = vec![];
        let mut acc = p0.clone();
        for _ in 1..=2 {
            xs.push(acc.xy().unwrap().0.clone());
            acc = ops.add(&acc, &p0);
        }
        let mut kp = vec![fq.one()];
        for x in &xs {
            kp = poly::mul(&fq, &kp, &[fq.neg(x), fq.one()]);
        }
        let kernel = KernelSubgroup {
            order: 5,
            kernel_poly: kp,
        };
        // push a rational non-kernel point through
        let mut sample = None;
        'outer: for x in 0..fq.p() {
            for y in 0..fq.p() {
                let pt = Point::Affine(fq.from_base(fq.base().to_el(x)), fq.from_base(fq.base().to_el(y)));
                if ops.is_on_curve(&pt) && !xs.contains(pt.xy().unwrap().0) {
                    sample = Some(pt);
                    break 'outer;
                }
            }
        }
        let sample = sample.unwrap();
        let (wq, imgs) = velu_quotient(&fq, &w, &kernel, &[sample]).unwrap();
        let n_q = count(&wq);
        assert_eq!(n_e, n_q, "isogenous curves must have equal point counts");
        let ops_q = CurveOps::new(&fq, wq);
        assert!(ops_q.is_on_curve(&imgs[0]));
    }

    #[test]
    fn velu_dual_composition_is_multiplication_by_n() {
        // (E/C) / phi(E[n]) with the pushed marked point renormalizes to the
        // Tate form of (E, [n](0,0)).
        let n = 3u32;
        let (fq, e) = fixture_curve(10007, 11);
        let w = e.to_weierstrass(&fq);
        let data = kernel_subgroups(&fq, &e, n, 11).unwrap();
        let big = data.field.clone();
        let wb = Weierstrass {
            a1: data.embed.map(&w.a1),
            a2: data.embed.map(&w.a2),
            a3: data.embed.map(&w.a3),
            a4: data.embed.map(&w.a4),
            a6: data.embed.map(&w.a6),
        };
        let p0 = Point::Affine(big.zero(), big.zero());
        let kernel = &data.kernels[0];
        // pick a second kernel and push its points to generate ker(dual)
        let other = &data.kernels[1];
        let other_pts = kernel_points(&big, &wb, other).unwrap();
        let (wq, mut imgs) =
            velu_quotient(&big, &wb, kernel, &[vec![p0.clone()], other_pts.clone()].concat())
                .unwrap();
        let img_p0 = imgs.remove(0);
        // kernel of the dual = image of E[n] = image of the other subgroup
        let mut kp = vec![big.one()];
        let mut seen: Vec<El> = vec![];
        for q in &imgs {
            let (qx, _) = q.xy().unwrap();
            if seen.contains(qx) {
                continue;
            }
            seen.push(qx.clone());
            kp = poly::mul(&big, &kp, &[big.neg(qx), big.one()]);
        }
        let dual_kernel = KernelSubgroup {
            order: n,
            kernel_poly: kp,
        };
        let (wqq, img2) = velu_quotient(&big, &wq, &dual_kernel, &[img_p0]).unwrap();
        let (tate2, _) = tate_normalize(&big, &wqq, &img2[0]).unwrap();
        // compare against (E, [n] (0,0))
        let ops = CurveOps::new(&big, wb.clone());
        let np0 = ops.scalar_mul(n as u64, &p0);
        let (tate_n, _) = tate_normalize(&big, &wb, &np0).unwrap();
        assert_eq!(tate2, tate_n);
    }
}
