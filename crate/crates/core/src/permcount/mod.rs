//! Permutations, hypermap enumeration and the closed counting formulas.

mod enumerate;
mod formulas;
mod hypermap;
mod perm;
mod table;

pub use enumerate::{
    brute_force_m, connected_brute, count_sigma1, fbullet_brute, sigma0_tallies, EnumConfig,
    EXTENDED_ONE_FACE_BOUND,
};
pub use formulas::{
    closed_m01, connected_from_disconnected, disconnected_recursion_step, disconnected_table, fbullet_closed,
    hbar_series, nb_recursion, pointed_count, read_counts, stirling_first, stirling_row,
};
pub use hypermap::{fixture_hypermaps, fixture_involution, FactorTriple, HypermapSpec, TripleInfo};
pub use perm::{is_transitive, Perm};
pub use table::{CountRecord, CountTable, Provenance};
