//! Computational toolkit for modular curves X_H(N): plane models from
//! modular-unit lattices, Jacobian arithmetic over finite fields, mod-ell
//! Galois representation spaces attached to level-one newforms, and
//! applications to the Ramanujan tau function.

pub mod algebra;
pub mod error;

pub use error::{Error, Result};
pub mod tate;
pub mod units;
pub mod model;
pub mod ffield;
