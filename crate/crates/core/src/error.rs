//! Crate-wide error type.

use std::fmt;

/// Errors raised by the toolkit, grouped by subsystem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Arithmetic substrate failures (bad modulus, dependent lattice basis, ...).
    Algebra(String),
    /// Tate-form / moduli failures (point order too small, degenerate point, ...).
    Moduli(String),
    /// Modular-unit lattice failures (data pack rejected, vector outside lattice, ...).
    Units(String),
    /// Plane-model construction failures (interpolation exhausted, genus mismatch, ...).
    Model(String),
    /// Function-field / Jacobian failures (degenerate ansatz, mismatched models, ...).
    FunctionField(String),
    /// Representation-space pipeline failures (resample signals, aborted primes, ...).
    Hecke(String),
    /// q-expansion failures (unsupported weight, non-integral series, ...).
    QExp(String),
    /// Frobenius / resolvent / sieve failures (excluded prime, labeling missing, ...).
    Frobenius(String),
    /// Data-pack validation failures.
    Validation(String),
    /// Configuration and I/O failures surfaced by the CLI.
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Algebra(m) => write!(f, "algebra: {m}"),
            Error::Moduli(m) => write!(f, "moduli: {m}"),
            Error::Units(m) => write!(f, "units: {m}"),
            Error::Model(m) => write!(f, "model: {m}"),
            Error::FunctionField(m) => write!(f, "function field: {m}"),
            Error::Hecke(m) => write!(f, "hecke: {m}"),
            Error::QExp(m) => write!(f, "qexp: {m}"),
            Error::Frobenius(m) => write!(f, "frobenius: {m}"),
            Error::Validation(m) => write!(f, "validation: {m}"),
            Error::Io(m) => write!(f, "io: {m}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
