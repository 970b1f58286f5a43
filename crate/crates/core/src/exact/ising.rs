//! The q = 1 reduction to an Ising model with local external fields.

use serde::{Deserialize, Serialize};

use crate::config::SpinConfig;
use crate::dist::FiniteDistribution;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::params::ModelParams;

/// Ising couplings with spins η = 2σ − 1 ∈ {−1, +1}.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsingParams {
    pub j: f64,
    pub h: Vec<f64>,
}

/// J = K/4 and h_x = (K deg_x − 2Δ)/4 for each vertex degree.
pub fn ising_map(params: &ModelParams, degrees: &[usize]) -> IsingParams {
    let (k, delta) = (params.k(), params.delta());
    IsingParams {
        j: k / 4.0,
        h: degrees
            .iter()
            .map(|&d| (k * d as f64 - 2.0 * delta) / 4.0)
            .collect(),
    }
}

/// (J, h) on a 2d-regular graph such as a periodic box:
/// J = −⅛ ln(1−p), h = ½(Kd − Δ).
pub fn ising_map_regular(params: &ModelParams, d: usize) -> (f64, f64) {
    let j = -params.log_r() / 4.0;
    let h = 0.5 * (params.k() * d as f64 - params.delta());
    (j, h)
}

/// Inverse of [`ising_map_regular`]: recovers the DRC parameters from (J, h).
pub fn ising_inverse_regular(j: f64, h: f64, d: usize, q: f64) -> Result<ModelParams> {
    if !(j >= 0.0) {
        return Err(Error::domain(format!("J must be nonnegative, got {j}")));
    }
    let k = 4.0 * j;
    ModelParams::from_bcp(k, k * d as f64 - 2.0 * h, q)
}

/// The Ising measure ∝ exp(J Σ_e η_x η_y + Σ_x h_x η_x), indexed by σ = (η+1)/2.
pub fn ising_measure(g: &Graph, ising: &IsingParams) -> Result<FiniteDistribution<SpinConfig>> {
    if ising.h.len() != g.num_vertices() {
        return Err(Error::invalid("one field value per vertex is required"));
    }
    FiniteDistribution::from_log_weights(SpinConfig::all(g.num_vertices(), 1).map(|s| {
        let eta = |x: usize| 2.0 * s.spins()[x] as f64 - 1.0;
        let pair: f64 = g.edges().iter().map(|&(u, v)| eta(u) * eta(v)).sum();
        let field: f64 = (0..g.num_vertices()).map(|x| ising.h[x] * eta(x)).sum();
        (s.clone(), ising.j * pair + field)
    }))
}
