//! Blume–Capel–Potts model and its diluted random-cluster representation.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: finite graphs, lattice regions and boundary conditions;
//! * [`exact`]: exhaustive BCP/DRC/coupling measures on small graphs;
//! * [`orderings`]: Holley/FKG checks, an exact dominance oracle and the
//!   comparison inequalities between parameter sets;
//! * [`sampler`]: heat-bath plus cluster Monte Carlo for the BCP measure;
//! * [`scan`]: finite-box observables, constants and (a, p) grid scans;
//! * [`cli`]: configuration files and the `bcp` command-line tool.

pub mod cli;
pub mod config;
pub mod dist;
pub mod error;
pub mod exact;
pub mod graph;
pub mod orderings;
pub mod params;
pub mod sampler;
pub mod scan;
pub mod union_find;

pub use config::{BitConfig, CoupledConfig, EdgeConfig, SpinConfig, ThetaConfig, VertexConfig};
pub use dist::FiniteDistribution;
pub use error::{Error, Result};
pub use graph::{build_box, BoundaryCondition, Graph, Region, SpinBoundary};
pub use params::ModelParams;
