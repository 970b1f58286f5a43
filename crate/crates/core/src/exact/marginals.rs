//! Vertex and edge marginals, connection probabilities and two-point functions.

use serde::{Deserialize, Serialize};

use crate::config::{BitConfig, EdgeConfig, SpinConfig, ThetaConfig, VertexConfig};
use crate::dist::FiniteDistribution;
use crate::error::{Error, Result};
use crate::graph::{BoundaryCondition, Graph, Region, SpinBoundary};
use crate::params::ModelParams;

use super::drc::Frame;
use super::rc::log_rc_multigraph;
use super::{bcp_measure_with_boundary, Limits};

/// Φ(ψ) = Σ_ω φ(ψ, ω).
pub fn vertex_marginal(dist: &FiniteDistribution<ThetaConfig>) -> FiniteDistribution<VertexConfig> {
    dist.map_marginal(|t| t.psi)
}

/// Υ(ω) = Σ_ψ φ(ψ, ω).
pub fn edge_marginal(dist: &FiniteDistribution<ThetaConfig>) -> FiniteDistribution<EdgeConfig> {
    dist.map_marginal(|t| t.omega)
}

/// (|E_ψ|, ln Z^RC_λ(Λ(ψ))) for one interior state ψ.
pub(crate) fn open_subgraph_log_rc(frame: &Frame, params: &ModelParams, psi: VertexConfig) -> (usize, f64) {
    let g = frame.region.graph();
    let n = frame.interior();

    // Contract each wired boundary class to one vertex; interior vertices stay distinct.
    let mut id = vec![usize::MAX; g.num_vertices()];
    let mut next = 0;
    for (v, slot) in id.iter_mut().enumerate().take(n) {
        if psi.get(v) {
            *slot = next;
            next += 1;
        }
    }
    let mut class_id = std::collections::HashMap::new();
    for (i, (&open, &class)) in frame.boundary.open.iter().zip(&frame.boundary.class).enumerate() {
        if open {
            id[n + i] = *class_id.entry(class).or_insert_with(|| {
                next += 1;
                next - 1
            });
        }
    }
    let mut edges = Vec::new();
    for &(u, v) in g.edges() {
        if id[u] != usize::MAX && id[v] != usize::MAX {
            edges.push((id[u], id[v]));
        }
    }
    let lrc = log_rc_multigraph(next, &edges, params.log_edge_odds(), params.q().ln());
    (edges.len(), lrc)
}

/// ln[r^{|E_ψ|} (a/(1−a))^{|V_ψ|} Z^RC_λ(Λ(ψ))] for one interior state ψ.
pub(crate) fn projected_log_weight(frame: &Frame, params: &ModelParams, psi: VertexConfig) -> f64 {
    let (e_psi, lrc) = open_subgraph_log_rc(frame, params, psi);
    let mut lw = e_psi as f64 * params.log_r() + lrc;
    let v_psi = psi.count_ones();
    if !params.all_vertices_open() && v_psi > 0 {
        lw += v_psi as f64 * params.log_vertex_odds();
    }
    lw
}

/// Vertex measure Φ^λ_Λ computed from ψ-weights r^{|E_ψ|}(a/(1−a))^{|V_ψ|}Z^RC_λ(Λ(ψ)).
///
/// This never enumerates ω, so it reaches regions such as B_1 ⊂ ℤ² whose full
/// (ψ, ω) table is too large.
pub fn vertex_measure(
    region: &Region,
    bc: &BoundaryCondition,
    params: &ModelParams,
) -> Result<FiniteDistribution<VertexConfig>> {
    vertex_measure_with_limits(region, bc, params, &Limits::default())
}

pub fn vertex_measure_with_limits(
    region: &Region,
    bc: &BoundaryCondition,
    params: &ModelParams,
    limits: &Limits,
) -> Result<FiniteDistribution<VertexConfig>> {
    let frame = Frame::new(region, bc)?;
    if frame.interior() > limits.max_projection_interior {
        return Err(Error::Capacity {
            what: "interior vertices for the vertex measure",
            needed: frame.interior() as u128,
            limit: limits.max_projection_interior as u128,
        });
    }
    let psis = frame.psi_range(params);
    FiniteDistribution::from_log_weights(
        psis.into_iter()
            .map(|psi| (psi, projected_log_weight(&frame, params, psi))),
    )
}

/// The second endpoint of a connection event.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Vertex(usize),
    /// Any open vertex of ∂Λ.
    Boundary,
}

/// Whether x ↔ target in θ. x ↔ x means x is open.
pub(crate) fn connected(frame: &Frame, theta: &ThetaConfig, x: usize, target: Target) -> bool {
    if !theta.psi.get(x) {
        return false;
    }
    let mut uf = frame.clusters(theta);
    match target {
        Target::Vertex(y) => uf.same(x, y),
        Target::Boundary => {
            let n = frame.interior();
            let rx = uf.find(x);
            (0..frame.boundary.open.len())
                .any(|i| frame.boundary.open[i] && uf.find(n + i) == rx)
        }
    }
}

fn check_target(region: &Region, x: usize, target: Target) -> Result<()> {
    let n = region.interior_len();
    if x >= n {
        return Err(Error::invalid(format!("vertex {x} is not interior")));
    }
    if let Target::Vertex(y) = target {
        if y >= n {
            return Err(Error::invalid(format!("vertex {y} is not interior")));
        }
    }
    Ok(())
}

/// φ^λ_Λ(x ↔ target) from a (ψ, ω) table on `region`.
pub fn connection_probability(
    region: &Region,
    bc: &BoundaryCondition,
    dist: &FiniteDistribution<ThetaConfig>,
    x: usize,
    target: Target,
) -> Result<f64> {
    check_target(region, x, target)?;
    let frame = Frame::new(region, bc)?;
    Ok(dist.prob_where(|t| connected(&frame, t, x, target)))
}

/// φ(x ↔ y) on a finite graph.
pub fn connectivity(g: &Graph, dist: &FiniteDistribution<ThetaConfig>, x: usize, y: usize) -> Result<f64> {
    let region = Region::from_graph(g.clone());
    connection_probability(&region, &BoundaryCondition::Zero, dist, x, Target::Vertex(y))
}

/// τ_q from a spin table: π(σ_x = σ_t ≠ 0) − π(σ_x σ_t ≠ 0)/q, where the
/// boundary target carries the spin `boundary_spin`.
pub fn two_point_from_spins(
    dist: &FiniteDistribution<SpinConfig>,
    q: u8,
    boundary_spin: u8,
    x: usize,
    target: Target,
) -> f64 {
    let qf = q as f64;
    dist.expect(|s| {
        let sx = s.spins()[x];
        let st = match target {
            Target::Vertex(y) => s.spins()[y],
            Target::Boundary => boundary_spin,
        };
        let both = sx != 0 && st != 0;
        let same = if both && sx == st { 1.0 } else { 0.0 };
        same - if both { 1.0 / qf } else { 0.0 }
    })
}

/// Two-point function τ_q(x, y) of the BCP measure on a finite graph.
pub fn two_point(g: &Graph, k: f64, delta: f64, q: u8, x: usize, y: usize) -> Result<f64> {
    let region = Region::from_graph(g.clone());
    two_point_region(&region, SpinBoundary::Free, k, delta, q, x, Target::Vertex(y))
}

/// Two-point function on a region with fixed boundary spins.
pub fn two_point_region(
    region: &Region,
    boundary: SpinBoundary,
    k: f64,
    delta: f64,
    q: u8,
    x: usize,
    target: Target,
) -> Result<f64> {
    check_target(region, x, target)?;
    let dist = bcp_measure_with_boundary(region, boundary, k, delta, q)?;
    Ok(two_point_from_spins(&dist, q, boundary.spin(), x, target))
}

/// Probability that vertex `x` is open under a vertex measure.
pub fn open_probability(dist: &FiniteDistribution<VertexConfig>, x: usize) -> f64 {
    dist.prob_where(|psi| psi.get(x))
}

/// Restriction of a vertex measure to the coordinates `keep` (in that order).
pub fn project_vertices(dist: &FiniteDistribution<VertexConfig>, keep: &[usize]) -> FiniteDistribution<VertexConfig> {
    dist.map_marginal(|psi| BitConfig::from_bools(&keep.iter().map(|&i| psi.get(i)).collect::<Vec<_>>()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::drc_measure;

    #[test]
    fn k2_vertex_and_edge_marginals() {
        let m = ModelParams::from_apq(0.5, 0.5, 2.0).unwrap();
        let d = drc_measure(&Graph::complete(2), &m).unwrap();
        let z = 5.0 + 3.0 * 2f64.sqrt();
        let phi = vertex_marginal(&d);
        let both = BitConfig::parse("11").unwrap();
        assert!((phi.prob(&both) - 3.0 * 2f64.sqrt() / z).abs() < 1e-12);
        let ups = edge_marginal(&d);
        assert!((ups.prob(&BitConfig::parse("1").unwrap()) - 2f64.sqrt() / z).abs() < 1e-12);
    }

    #[test]
    fn projection_route_matches_table() {
        let region = crate::graph::build_box(2, 0).unwrap();
        for bc in [BoundaryCondition::Zero, BoundaryCondition::One] {
            for &(a, p, q) in &[(0.3, 0.6, 1.5), (0.7, 0.2, 2.0), (1.0, 0.5, 3.0)] {
                let m = ModelParams::from_apq(a, p, q).unwrap();
                let table = vertex_marginal(&crate::exact::drc_measure_with_boundary(&region, &bc, &m).unwrap());
                let direct = vertex_measure(&region, &bc, &m).unwrap();
                assert!(table.max_abs_diff(&direct) < 1e-12);
                assert!((table.log_total() - direct.log_total()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn p_zero_gives_product_measure() {
        let region = crate::graph::build_box(1, 1).unwrap();
        let (a, q) = (0.3, 1.7);
        let m = ModelParams::from_apq(a, 0.0, q).unwrap();
        let phi = vertex_measure(&region, &BoundaryCondition::One, &m).unwrap();
        let rho = q * a / (1.0 - a + q * a);
        for (psi, pr) in phi.iter() {
            let k = psi.count_ones() as i32;
            let want = rho.powi(k) * (1.0 - rho).powi(3 - k);
            assert!((pr - want).abs() < 1e-12);
        }
    }

    #[test]
    fn k2_two_point() {
        let k = 0.5 * 2f64.ln();
        let tau = two_point(&Graph::complete(2), k, 0.0, 2, 0, 1).unwrap();
        let z = 5.0 + 3.0 * 2f64.sqrt();
        assert!((tau - (2f64.sqrt() / 2.0) / z).abs() < 1e-12);
        assert_eq!(two_point(&Graph::complete(2), k, 0.3, 1, 0, 1).unwrap(), 0.0);
    }
}
