//! Stochastic orderings on {0,1}^I.

mod conditions;
mod dominance;
mod lattice;
mod measure;

pub use conditions::{
    edge_weight_w, finite_energy_bounds, nonmonotonicity_witness, open_conditionals, prop53_condition,
    thm54_condition, thm61_condition, thm62_condition, NonMonotonicityWitness, Prop53Report, Thm54, Thm61,
};
pub use dominance::{
    dominance_exact, dominance_report, positively_associated, upsets, DominanceReport, DominanceViolation,
    MAX_DOMINANCE_INDICES,
};
pub use lattice::{
    fkg_check, fkg_check_exhaustive, holley_check, holley_check_exhaustive, LatticeCheck, Violation, LATTICE_TOL,
};
pub use measure::{BinaryMeasure, MAX_BINARY_INDICES};
