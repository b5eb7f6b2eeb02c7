//! Topological recursion on x = z^{a−1} + 1/z, y = z.

mod chart;
mod curve;
mod engine;
mod expand;
mod identities;
mod omega;
mod recursion;

pub use chart::LocalChart;
pub use curve::SpectralCurve;
pub use expand::{expand_at_infinity, expand_omega01, expand_omega02, positive_vectors, z_at_infinity, ExpansionTable};
pub use identities::{pair_first_variable, string_dilaton_check, symplectic_invariant, IdentityReport, Pairing, RationalForm};
pub use engine::Orientation;
pub use omega::OmegaDatum;
pub use recursion::{
    default_order, is_stable, numeric_agreement, numeric_step, recursion_step, required_lower, NumericOmega, OmegaTable, StepConfig,
    Route, NUMERIC_CHECK_BITS,
};
