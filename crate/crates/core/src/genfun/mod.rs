//! Partition function, free energies and the quantum curve.

mod free_energy;
mod qcurve;
mod xseries;
mod zbar;

pub use free_energy::{compositions, contributing_types, free_energy_series, zbar_from_free_energies};
pub use qcurve::{apply_quantum_operator, first_nonzero, verify_schrodinger, RouteStatus, SchrodingerReport};
pub use xseries::{XSeries, XTerm};
pub use zbar::{is_one_at_minus_one, zbar, zbar_closed, ZbarRoute};
