//! Compatible pairs θ = (ψ, ω) and the diluted random-cluster measure.

use crate::config::{submasks, BitConfig, ThetaConfig, VertexConfig};
use crate::dist::FiniteDistribution;
use crate::error::{Error, Result};
use crate::graph::{BoundaryCondition, Graph, Region, ResolvedBoundary};
use crate::params::ModelParams;
use crate::union_find::UnionFind;

use super::Limits;

/// A region with its boundary condition resolved, laid out for enumeration.
#[derive(Clone, Debug)]
pub(crate) struct Frame<'a> {
    pub region: &'a Region,
    pub boundary: ResolvedBoundary,
}

impl<'a> Frame<'a> {
    pub fn new(region: &'a Region, bc: &BoundaryCondition) -> Result<Self> {
        Ok(Frame {
            region,
            boundary: bc.resolve(region)?,
        })
    }

    pub fn interior(&self) -> usize {
        self.region.interior_len()
    }

    pub fn num_edges(&self) -> usize {
        self.region.graph().num_edges()
    }

    #[inline]
    pub fn is_open(&self, psi: VertexConfig, v: usize) -> bool {
        let n = self.interior();
        if v < n {
            psi.get(v)
        } else {
            self.boundary.open[v - n]
        }
    }

    /// Bitmask of E_ψ.
    pub fn open_edge_mask(&self, psi: VertexConfig) -> u64 {
        let mut mask = 0u64;
        for (e, &(u, v)) in self.region.graph().edges().iter().enumerate() {
            if self.is_open(psi, u) && self.is_open(psi, v) {
                mask |= 1 << e;
            }
        }
        mask
    }

    /// Union-find over V⁺ joining ω-open edges and wired open boundary vertices.
    pub fn clusters(&self, theta: &ThetaConfig) -> UnionFind {
        let g = self.region.graph();
        let n = self.interior();
        let mut uf = UnionFind::new(g.num_vertices());
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if theta.omega.get(e) {
                uf.union(u, v);
            }
        }
        let mut first_in_class: std::collections::HashMap<usize, usize> = Default::default();
        for (i, (&open, &class)) in self.boundary.open.iter().zip(&self.boundary.class).enumerate() {
            if open {
                let v = n + i;
                let rep = *first_in_class.entry(class).or_insert(v);
                uf.union(rep, v);
            }
        }
        uf
    }

    /// k(θ, Λ): open clusters meeting V⁺, boundary wiring included.
    pub fn cluster_count(&self, theta: &ThetaConfig) -> usize {
        let mut uf = self.clusters(theta);
        let total = self.region.graph().num_vertices();
        (0..total)
            .filter(|&v| self.is_open(theta.psi, v) && uf.find(v) == v)
            .count()
    }

    /// ψ configurations allowed by the parameters (only ψ ≡ 1 when a = 1).
    pub fn psi_range(&self, params: &ModelParams) -> Vec<VertexConfig> {
        let n = self.interior();
        if params.all_vertices_open() {
            vec![BitConfig::ones(n)]
        } else {
            BitConfig::all(n).collect()
        }
    }

    pub fn check_table(&self, limits: &Limits) -> Result<()> {
        if self.interior() >= 63 || self.num_edges() > 64 {
            return Err(Error::Capacity {
                what: "configuration bit width",
                needed: self.interior().max(self.num_edges()) as u128,
                limit: 62,
            });
        }
        let rows = theta_table_size_frame(self);
        if rows > limits.max_table_rows {
            return Err(Error::Capacity {
                what: "compatible (ψ, ω) pairs",
                needed: rows,
                limit: limits.max_table_rows,
            });
        }
        Ok(())
    }

    /// ln of the unnormalized DRC weight of θ.
    pub fn log_weight(&self, params: &ModelParams, theta: &ThetaConfig) -> f64 {
        let e_psi = self.open_edge_mask(theta.psi).count_ones() as f64;
        let v_psi = theta.psi.count_ones();
        let omega = theta.omega.count_ones();
        let mut lw = e_psi * params.log_r() + self.cluster_count(theta) as f64 * params.q().ln();
        if !params.all_vertices_open() && v_psi > 0 {
            lw += v_psi as f64 * params.log_vertex_odds();
        }
        if omega > 0 {
            lw += omega as f64 * params.log_edge_odds();
        }
        lw
    }
}

fn theta_table_size_frame(frame: &Frame) -> u128 {
    let n = frame.interior();
    if n >= 63 {
        return u128::MAX;
    }
    BitConfig::all(n)
        .map(|psi| 1u128 << frame.open_edge_mask(psi).count_ones())
        .sum()
}

/// Σ_ψ 2^{|E_ψ|}: the number of compatible pairs on a region.
pub fn theta_table_size(region: &Region, bc: &BoundaryCondition) -> Result<u128> {
    Ok(theta_table_size_frame(&Frame::new(region, bc)?))
}

fn theta_iter<'f>(frame: &'f Frame<'f>, psis: Vec<VertexConfig>) -> impl Iterator<Item = ThetaConfig> + 'f {
    let m = frame.num_edges();
    psis.into_iter().flat_map(move |psi| {
        submasks(frame.open_edge_mask(psi)).map(move |w| ThetaConfig {
            psi,
            omega: BitConfig::new(w, m),
        })
    })
}

/// All compatible pairs on a finite graph.
pub fn enumerate_theta(g: &Graph) -> Result<Vec<ThetaConfig>> {
    let limits = Limits::default();
    limits.check_graph(g)?;
    let region = Region::from_graph(g.clone());
    enumerate_theta_region(&region, &BoundaryCondition::Zero)
}

/// All compatible pairs on a region with ψ fixed to κ on ∂Λ.
pub fn enumerate_theta_region(region: &Region, bc: &BoundaryCondition) -> Result<Vec<ThetaConfig>> {
    let frame = Frame::new(region, bc)?;
    frame.check_table(&Limits::default())?;
    let psis = BitConfig::all(frame.interior()).collect();
    Ok(theta_iter(&frame, psis).collect())
}

/// DRC measure on a finite graph.
pub fn drc_measure(g: &Graph, params: &ModelParams) -> Result<FiniteDistribution<ThetaConfig>> {
    drc_measure_with_limits(g, params, &Limits::default())
}

pub fn drc_measure_with_limits(
    g: &Graph,
    params: &ModelParams,
    limits: &Limits,
) -> Result<FiniteDistribution<ThetaConfig>> {
    limits.check_graph(g)?;
    let region = Region::from_graph(g.clone());
    drc_region_table(&region, &BoundaryCondition::Zero, params, limits)
}

/// DRC measure on a region with boundary condition λ.
pub fn drc_measure_with_boundary(
    region: &Region,
    bc: &BoundaryCondition,
    params: &ModelParams,
) -> Result<FiniteDistribution<ThetaConfig>> {
    drc_region_table(region, bc, params, &Limits::default())
}

pub(crate) fn drc_region_table(
    region: &Region,
    bc: &BoundaryCondition,
    params: &ModelParams,
    limits: &Limits,
) -> Result<FiniteDistribution<ThetaConfig>> {
    let frame = Frame::new(region, bc)?;
    frame.check_table(limits)?;
    let psis = frame.psi_range(params);
    FiniteDistribution::from_log_weights(
        theta_iter(&frame, psis).map(|t| (t, frame.log_weight(params, &t))),
    )
}
