//! The BCP spin measure and the coupling measure μ on (σ, ψ, ω).

use crate::config::{submasks, BitConfig, CoupledConfig, SpinConfig, ThetaConfig};
use crate::dist::FiniteDistribution;
use crate::error::{Error, Result};
use crate::graph::{Graph, Region, SpinBoundary};
use crate::params::ModelParams;

use super::Limits;

fn check_spin_args(region: &Region, boundary: SpinBoundary, k: f64, delta: f64, q: u8, limits: &Limits) -> Result<()> {
    if !(k >= 0.0 && k.is_finite()) {
        return Err(Error::domain(format!("K must be finite and nonnegative, got {k}")));
    }
    if !delta.is_finite() {
        return Err(Error::domain(format!("Δ must be finite, got {delta}")));
    }
    if q == 0 {
        return Err(Error::domain("spin measures need q >= 1"));
    }
    if boundary.spin() > q {
        return Err(Error::domain(format!(
            "boundary spin {} exceeds q = {q}",
            boundary.spin()
        )));
    }
    let rows = (q as u128 + 1).checked_pow(region.interior_len() as u32).unwrap_or(u128::MAX);
    if rows > limits.max_table_rows {
        return Err(Error::Capacity {
            what: "spin configurations",
            needed: rows,
            limit: limits.max_table_rows,
        });
    }
    Ok(())
}

#[inline]
fn spin_at(sigma: &[u8], boundary_spin: u8, v: usize) -> u8 {
    sigma.get(v).copied().unwrap_or(boundary_spin)
}

/// (|E_σ|, Σ_e δ_e(σ), mask of edges with equal nonzero endpoint spins).
fn edge_stats(region: &Region, sigma: &[u8], boundary_spin: u8) -> (usize, usize, u64) {
    let mut e_sigma = 0;
    let mut agree = 0;
    let mut mask = 0u64;
    for (e, &(u, v)) in region.graph().edges().iter().enumerate() {
        let (su, sv) = (spin_at(sigma, boundary_spin, u), spin_at(sigma, boundary_spin, v));
        if su != 0 && sv != 0 {
            e_sigma += 1;
            if su == sv {
                agree += 1;
                if e < 64 {
                    mask |= 1 << e;
                }
            }
        }
    }
    (e_sigma, agree, mask)
}

/// ln of the unnormalized BCP weight of σ on a region.
pub(crate) fn bcp_log_weight(region: &Region, boundary_spin: u8, k: f64, delta: f64, sigma: &[u8]) -> f64 {
    let (e_sigma, agree, _) = edge_stats(region, sigma, boundary_spin);
    let zeros = sigma.iter().filter(|&&s| s == 0).count();
    -k * e_sigma as f64 + 2.0 * k * agree as f64 + delta * zeros as f64
}

/// BCP measure π_q on a finite graph.
pub fn bcp_measure(g: &Graph, k: f64, delta: f64, q: u8) -> Result<FiniteDistribution<SpinConfig>> {
    let limits = Limits::default();
    limits.check_graph(g)?;
    bcp_measure_with_boundary(&Region::from_graph(g.clone()), SpinBoundary::Free, k, delta, q)
}

/// BCP measure on a region, boundary spins fixed by `boundary`.
pub fn bcp_measure_with_boundary(
    region: &Region,
    boundary: SpinBoundary,
    k: f64,
    delta: f64,
    q: u8,
) -> Result<FiniteDistribution<SpinConfig>> {
    check_spin_args(region, boundary, k, delta, q, &Limits::default())?;
    let b = boundary.spin();
    FiniteDistribution::from_log_weights(SpinConfig::all(region.interior_len(), q).map(|s| {
        let lw = bcp_log_weight(region, b, k, delta, s.spins());
        (s, lw)
    }))
}

/// Coupling measure μ on a finite graph.
pub fn coupling_measure(g: &Graph, k: f64, delta: f64, q: u8) -> Result<FiniteDistribution<CoupledConfig>> {
    let limits = Limits::default();
    limits.check_graph(g)?;
    coupling_measure_with_boundary(&Region::from_graph(g.clone()), SpinBoundary::Free, k, delta, q)
}

/// Coupling measure on a region. A fixed spin s ≥ 1 on ∂Λ pairs with the
/// wired DRC boundary; the free spin boundary pairs with the closed one.
pub fn coupling_measure_with_boundary(
    region: &Region,
    boundary: SpinBoundary,
    k: f64,
    delta: f64,
    q: u8,
) -> Result<FiniteDistribution<CoupledConfig>> {
    let limits = Limits::default();
    check_spin_args(region, boundary, k, delta, q, &limits)?;
    let m = region.graph().num_edges();
    if m > 64 {
        return Err(Error::Capacity {
            what: "edges in a coupling table",
            needed: m as u128,
            limit: 64,
        });
    }
    let params = ModelParams::from_bcp(k, delta, q as f64)?;
    let b = boundary.spin();
    let mut rows = Vec::new();
    let mut count: u128 = 0;
    for sigma in SpinConfig::all(region.interior_len(), q) {
        let (e_sigma, _, agree_mask) = edge_stats(region, sigma.spins(), b);
        let psi = sigma.open_vertices();
        let base = e_sigma as f64 * params.log_r() + psi.count_ones() as f64 * params.log_vertex_odds();
        for w in submasks(agree_mask) {
            count += 1;
            if count > limits.max_table_rows {
                return Err(Error::Capacity {
                    what: "coupling support",
                    needed: count,
                    limit: limits.max_table_rows,
                });
            }
            let open = w.count_ones();
            let lw = if open == 0 {
                base
            } else {
                base + open as f64 * params.log_edge_odds()
            };
            rows.push((
                CoupledConfig {
                    sigma: sigma.clone(),
                    theta: ThetaConfig {
                        psi,
                        omega: BitConfig::new(w, m),
                    },
                },
                lw,
            ));
        }
    }
    FiniteDistribution::from_log_weights(rows)
}

/// Spin marginal of a coupling table.
pub fn spin_marginal(mu: &FiniteDistribution<CoupledConfig>) -> FiniteDistribution<SpinConfig> {
    mu.map_marginal(|c| c.sigma.clone())
}

/// (ψ, ω) marginal of a coupling table.
pub fn theta_marginal(mu: &FiniteDistribution<CoupledConfig>) -> FiniteDistribution<ThetaConfig> {
    mu.map_marginal(|c| c.theta)
}
