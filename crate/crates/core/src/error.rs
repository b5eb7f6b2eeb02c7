use thiserror::Error;

use crate::arith::Poly;
use crate::arith::Rat;

/// Errors raised across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("coefficient of exponent {requested} requested outside the known window (known up to {known})")]
    OutOfWindow { requested: i64, known: i64 },

    #[error("series has constant term {found}, expected {expected}")]
    ConstantTerm { expected: &'static str, found: String },

    #[error("element is zero modulo the defining polynomial")]
    ZeroDivisor,

    #[error("modulus splits as {0} * {1}")]
    Split(Poly<Rat>, Poly<Rat>),

    #[error("not invertible: {0}")]
    NotInvertible(String),

    #[error("degree {degree} exceeds the enumeration bound {bound}")]
    DegreeBound { degree: usize, bound: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("missing data for {0}")]
    Missing(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
