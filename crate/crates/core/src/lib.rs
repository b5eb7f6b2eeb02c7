//! Exact enumeration of a-hypermaps, the modified partition function and its
//! quantum curve, and the topological recursion on the rational spectral curves
//! `x(z) = z^(a-1) + 1/z`, `y(z) = z`.
//!
//! Everything is computed in exact rational arithmetic. Sums over branch points
//! are carried out in the quotient ring `Q[s]/((a-1)s^a - 1)` and reduced to
//! rationals with a trace, so no roots are ever extracted.

pub mod arith;
pub mod error;
pub mod genfun;
pub mod permcount;
pub mod specrec;
pub mod verify;

pub use error::{Error, Result};

/// Library version, part of every cache key.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
