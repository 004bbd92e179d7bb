//! Cosmetic-surgery obstructions, the cabling-constant fit, and table scans.

pub mod fit;
pub mod invariants;
pub mod report;
pub mod scan;

pub use fit::{fit_cabling_constants, FitResult, FitRow};
pub use invariants::{alexander, braid_of, delta2, jones_of, torus_alexander, torus_delta2, v3_check, Unavailable};
pub use report::{
    ni_wu_congruence, obstruction_report, report_with, Check, Criterion, KnotInvariants, ObstructionReport, Outcome, Verdict,
};
pub use scan::{load_table, scan, slope_grid, Diagnostic, LoadedTable, ScanRecord, TableRow};
