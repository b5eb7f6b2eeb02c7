//! Conjecture checks and consolidated reports.

mod conj1;
mod quasi;
mod report;
mod source;

pub use conj1::{check_conjecture1, Conjecture1Report, Mismatch};
pub use quasi::{binomial_factor, quasi_poly_check, CosetFit, FitStatus, HoldoutPoint, QuasiPolyFit};
pub use report::{consistency_report, CheckResult, CheckStatus, ConsistencyReport, Fault, ReportConfig};
pub use source::{BruteForce, ClosedOneFace, CountSource, WithFault};
