//! Exact arithmetic substrate: prime fields and extensions, polynomials,
//! resultants, finite-field factorization, p-adic lifting, CRT with rational
//! reconstruction, and LLL reduction of integer lattices.

pub mod factor;
pub mod fp;
pub mod fq;
pub mod hnf;
pub mod lll;
pub mod padic;
pub mod poly;
pub mod ring;
pub mod series;
pub mod zint;
pub mod zpoly;

pub use fp::Fp;
pub use fq::{Fq, FqEmbed};
pub use ring::{Field, Ring, QQ, ZZ};

use crate::error::Result;
use num_bigint::BigInt;

/// An integer lattice given by basis rows. Rows must be independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerLattice {
    pub basis: Vec<Vec<BigInt>>,
}

impl IntegerLattice {
    pub fn new(basis: Vec<Vec<BigInt>>) -> IntegerLattice {
        IntegerLattice { basis }
    }
}

/// LLL-reduce the lattice basis (delta = 0.99). Errors when rows are
/// dependent.
pub fn lll_reduce(lattice: &IntegerLattice) -> Result<IntegerLattice> {
    Ok(IntegerLattice {
        basis: lll::lll_reduce(&lattice.basis)?,
    })
}

/// Resultant of two bivariate integer polynomials with respect to one of the
/// two variables ("x" or "y").
pub fn resultant(f: &zpoly::Zxy, g: &zpoly::Zxy, eliminate: char) -> Result<zpoly::Zx> {
    match eliminate {
        'y' => zpoly::zxy_resultant_y(f, g),
        'x' => zpoly::zxy_resultant_x(f, g),
        v => Err(crate::error::Error::Algebra(format!(
            "unknown variable {v}"
        ))),
    }
}

/// Reconstruct a rational from residues modulo distinct primes; `None` means
/// the modulus is not yet large enough.
pub fn crt_reconstruct_rational(
    residues: &[(BigInt, BigInt)],
) -> Result<Option<(BigInt, BigInt)>> {
    zint::crt_reconstruct_rational(residues)
}

/// Hensel-lift a simple root of an integer polynomial.
pub fn hensel_lift_root(
    f: &[BigInt],
    prime: &BigInt,
    seed_root: &BigInt,
    precision: u32,
) -> Result<padic::Padic> {
    padic::hensel_lift_root(f, prime, seed_root, precision)
}

/// Factor a univariate polynomial over F_q into monic irreducibles with
/// multiplicities; the leading unit is returned first.
pub fn factor_fq(
    fq: &Fq,
    f: &[Vec<u64>],
    seed: u64,
) -> Result<(Vec<u64>, Vec<(Vec<Vec<u64>>, usize)>)> {
    factor::factor(fq, f, seed)
}
