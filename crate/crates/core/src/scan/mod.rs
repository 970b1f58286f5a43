//! Finite-box estimation: observables, lattice constants, comparison regions
//! and parallel (a, p) grid scans with batch-means error bars.

mod constants;
mod grid;
mod observables;
mod stats;

pub use constants::{
    arc_point, critical_constants, fixed_ratio_arc, h_zero_arc, region_predicates, CriticalConstants,
    RegionFlags, P_C_SITE,
};
pub use grid::{hysteresis, scan, ScanBoundary, ScanGrid, ScanRow, ScanTable, Sweep, DEFAULT_RADIUS};
pub use observables::{Observable, ObservableContext};
pub use stats::{batch_means, summarize, tau_estimate, Estimate, TauEstimate, DEFAULT_BATCHES};
