//! Exact measures on small graphs and regions by exhaustive enumeration.

mod bcp;
mod derivatives;
mod drc;
mod ising;
mod marginals;
mod rc;

pub use bcp::{
    bcp_measure, bcp_measure_with_boundary, coupling_measure, coupling_measure_with_boundary,
    spin_marginal, theta_marginal,
};
pub use derivatives::{
    finite_difference_derivatives, log_partition, log_partition_derivatives, LogPartitionDerivatives,
};
pub use drc::{
    drc_measure, drc_measure_with_boundary, drc_measure_with_limits, enumerate_theta,
    enumerate_theta_region, theta_table_size,
};
pub use ising::{ising_inverse_regular, ising_map, ising_map_regular, ising_measure, IsingParams};
pub use marginals::{
    connection_probability, connectivity, edge_marginal, open_probability, project_vertices,
    two_point, two_point_from_spins, two_point_region, vertex_marginal, vertex_measure,
    vertex_measure_with_limits, Target,
};
pub(crate) use drc::Frame;
pub(crate) use marginals::open_subgraph_log_rc;

pub use rc::{rc_log_partition, rc_partition, rc_partition_wired};


use crate::error::{Error, Result};
use crate::graph::{BoundaryCondition, Graph, Region};
use crate::params::ModelParams;

/// Size caps for exhaustive enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Vertex cap for abstract graphs.
    pub max_graph_vertices: usize,
    /// Edge cap for abstract graphs.
    pub max_graph_edges: usize,
    /// Rows in any explicit table (spin, (ψ, ω) or coupling).
    pub max_table_rows: u128,
    /// Interior vertices for the ψ-only vertex measure.
    pub max_projection_interior: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_graph_vertices: 6,
            max_graph_edges: 8,
            max_table_rows: 1 << 20,
            max_projection_interior: 16,
        }
    }
}

impl Limits {
    pub fn check_graph(&self, g: &Graph) -> Result<()> {
        if g.num_vertices() > self.max_graph_vertices {
            return Err(Error::Capacity {
                what: "graph vertices",
                needed: g.num_vertices() as u128,
                limit: self.max_graph_vertices as u128,
            });
        }
        if g.num_edges() > self.max_graph_edges {
            return Err(Error::Capacity {
                what: "graph edges",
                needed: g.num_edges() as u128,
                limit: self.max_graph_edges as u128,
            });
        }
        Ok(())
    }
}

/// φ(C) for an arbitrary event on (ψ, ω), from the exact table.
pub fn event_probability<F: Fn(&crate::config::ThetaConfig) -> bool>(
    region: &Region,
    bc: &BoundaryCondition,
    params: &ModelParams,
    event: F,
) -> Result<f64> {
    Ok(drc_measure_with_boundary(region, bc, params)?.prob_where(event))
}
