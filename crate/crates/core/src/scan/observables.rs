//! Per-sample observables of a coupled configuration (σ, ψ, ω).
//!
//! Cluster sizes count interior vertices and are divided by |V|. Edge
//! clusters are those of (V_ψ ∪ open ∂Λ, η(ω)); under a nonzero boundary spin
//! all boundary vertices are open and wired together. Vertex clusters use the
//! interior lattice edges only.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Target;
use crate::graph::{Region, SpinBoundary};
use crate::sampler::Bonds;
use crate::union_find::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    /// Fraction of interior vertices with ψ = 1.
    OpenVertexDensity,
    /// Fraction of edges of Λ⁺ with ω = 1.
    OpenEdgeDensity,
    /// Largest open edge-cluster, as a fraction of |V|.
    LargestEdgeCluster,
    /// Indicator of 0 ↔ ∂Λ in ω.
    BoundaryConnection,
    /// Largest cluster of ψ-closed interior vertices, as a fraction of |V|.
    LargestClosedCluster,
    /// Largest cluster of ψ-open interior vertices, as a fraction of |V|.
    LargestOpenCluster,
    /// 1{σ_0 = σ_t ≠ 0} − 1{σ_0 σ_t ≠ 0}/q for the context's target t.
    TauSpin,
    /// Indicator of 0 ↔ t in ω.
    TargetConnection,
    /// Mean of 2ψ_x − 1 (the Ising spin when q = 1).
    Magnetization,
}

impl Observable {
    pub const ALL: [Observable; 9] = [
        Observable::OpenVertexDensity,
        Observable::OpenEdgeDensity,
        Observable::LargestEdgeCluster,
        Observable::BoundaryConnection,
        Observable::LargestClosedCluster,
        Observable::LargestOpenCluster,
        Observable::TauSpin,
        Observable::TargetConnection,
        Observable::Magnetization,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Observable::OpenVertexDensity => "open_vertex_density",
            Observable::OpenEdgeDensity => "open_edge_density",
            Observable::LargestEdgeCluster => "largest_edge_cluster",
            Observable::BoundaryConnection => "boundary_connection",
            Observable::LargestClosedCluster => "largest_closed_cluster",
            Observable::LargestOpenCluster => "largest_open_cluster",
            Observable::TauSpin => "tau_spin",
            Observable::TargetConnection => "target_connection",
            Observable::Magnetization => "magnetization",
        }
    }
}

impl FromStr for Observable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Observable::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown observable '{s}'")))
    }
}

/// Fixed data needed to evaluate observables on one region.
#[derive(Clone, Debug)]
pub struct ObservableContext<'a> {
    region: &'a Region,
    boundary_spin: u8,
    q: u8,
    pub origin: usize,
    pub target: Target,
}

impl<'a> ObservableContext<'a> {
    /// Origin is [`Region::origin`]. The target is ∂Λ under a nonzero boundary
    /// spin on a region with boundary, and otherwise the last interior vertex.
    pub fn new(region: &'a Region, boundary: SpinBoundary, q: u8) -> Self {
        let target = if boundary.spin() != 0 && region.boundary_len() > 0 {
            Target::Boundary
        } else {
            Target::Vertex(region.interior_len() - 1)
        };
        ObservableContext {
            region,
            boundary_spin: boundary.spin(),
            q,
            origin: region.origin(),
            target,
        }
    }

    pub fn with_target(mut self, target: Target) -> Self {
        self.target = target;
        self
    }

    fn edge_clusters(&self, bonds: &Bonds) -> UnionFind {
        let g = self.region.graph();
        let n = self.region.interior_len();
        let mut uf = UnionFind::new(g.num_vertices());
        for (&(u, v), &w) in g.edges().iter().zip(&bonds.omega) {
            if w {
                uf.union(u, v);
            }
        }
        if self.boundary_spin != 0 {
            for v in n + 1..g.num_vertices() {
                uf.union(n, v);
            }
        }
        uf
    }

    fn connected_to(&self, uf: &mut UnionFind, bonds: &Bonds, target: Target) -> bool {
        let n = self.region.interior_len();
        if !bonds.psi[self.origin] {
            return false;
        }
        match target {
            Target::Vertex(y) => uf.same(self.origin, y),
            Target::Boundary => self.boundary_spin != 0 && n < self.region.closure_len() && uf.same(self.origin, n),
        }
    }

    fn largest_vertex_cluster(&self, bonds: &Bonds, open: bool) -> f64 {
        let n = self.region.interior_len();
        let mut uf = UnionFind::new(n);
        for &(u, v) in self.region.graph().edges() {
            if u < n && v < n && bonds.psi[u] == open && bonds.psi[v] == open {
                uf.union(u, v);
            }
        }
        largest(&mut uf, (0..n).filter(|&x| bonds.psi[x] == open)) / n as f64
    }

    /// Values of `observables` on one sample, in order.
    pub fn measure(&self, observables: &[Observable], sigma: &[u8], bonds: &Bonds) -> Vec<f64> {
        let n = self.region.interior_len();
        let mut edge_uf: Option<UnionFind> = None;
        let mut values = Vec::with_capacity(observables.len());
        for obs in observables {
            let v = match obs {
                Observable::OpenVertexDensity => bonds.psi.iter().filter(|&&b| b).count() as f64 / n as f64,
                Observable::OpenEdgeDensity => {
                    let m = bonds.omega.len();
                    if m == 0 {
                        0.0
                    } else {
                        bonds.omega.iter().filter(|&&b| b).count() as f64 / m as f64
                    }
                }
                Observable::LargestEdgeCluster => {
                    let uf = edge_uf.get_or_insert_with(|| self.edge_clusters(bonds));
                    largest(uf, (0..n).filter(|&x| bonds.psi[x])) / n as f64
                }
                Observable::BoundaryConnection => {
                    let uf = edge_uf.get_or_insert_with(|| self.edge_clusters(bonds));
                    indicator(self.connected_to(uf, bonds, Target::Boundary))
                }
                Observable::TargetConnection => {
                    let uf = edge_uf.get_or_insert_with(|| self.edge_clusters(bonds));
                    indicator(self.connected_to(uf, bonds, self.target))
                }
                Observable::LargestClosedCluster => self.largest_vertex_cluster(bonds, false),
                Observable::LargestOpenCluster => self.largest_vertex_cluster(bonds, true),
                Observable::TauSpin => {
                    let s0 = sigma[self.origin];
                    let st = match self.target {
                        Target::Vertex(y) => sigma[y],
                        Target::Boundary => self.boundary_spin,
                    };
                    if s0 != 0 && st != 0 {
                        indicator(s0 == st) - 1.0 / self.q as f64
                    } else {
                        0.0
                    }
                }
                Observable::Magnetization => {
                    bonds.psi.iter().map(|&b| if b { 1.0 } else { -1.0 }).sum::<f64>() / n as f64
                }
            };
            values.push(v);
        }
        values
    }
}

fn indicator(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

/// Size of the largest class among `members`.
fn largest(uf: &mut UnionFind, members: impl Iterator<Item = usize>) -> f64 {
    let mut size = std::collections::HashMap::new();
    let mut best = 0usize;
    for x in members {
        let c = size.entry(uf.find(x)).or_insert(0usize);
        *c += 1;
        best = best.max(*c);
    }
    best as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_box;

    #[test]
    fn densities_and_clusters_on_a_line() {
        // Sites -1, 0, 1 with ∂Λ = {-2, 2}.
        let r = build_box(1, 1).unwrap();
        let edges = r.graph().edges().to_vec();
        let omega: Vec<bool> = edges.iter().map(|&e| e == (0, 1) || e == (0, 3)).collect();
        let bonds = Bonds { psi: vec![true, true, false], omega };
        let sigma = [1, 1, 0];
        let ctx = ObservableContext::new(&r, SpinBoundary::Fixed(1), 2);
        assert_eq!(ctx.origin, 1);
        let v = ctx.measure(&Observable::ALL, &sigma, &bonds);
        let get = |o: Observable| v[Observable::ALL.iter().position(|&x| x == o).unwrap()];
        assert!((get(Observable::OpenVertexDensity) - 2.0 / 3.0).abs() < 1e-15);
        assert!((get(Observable::OpenEdgeDensity) - 0.5).abs() < 1e-15);
        assert!((get(Observable::LargestEdgeCluster) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(get(Observable::BoundaryConnection), 1.0);
        assert_eq!(get(Observable::TargetConnection), 1.0);
        assert!((get(Observable::LargestClosedCluster) - 1.0 / 3.0).abs() < 1e-15);
        assert!((get(Observable::LargestOpenCluster) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(get(Observable::TauSpin), 0.5);
        assert!((get(Observable::Magnetization) - 1.0 / 3.0).abs() < 1e-15);

        let free = ObservableContext::new(&r, SpinBoundary::Free, 2);
        let v = free.measure(&[Observable::BoundaryConnection], &sigma, &bonds);
        assert_eq!(v[0], 0.0);
    }

    #[test]
    fn names_parse_back() {
        for o in Observable::ALL {
            assert_eq!(o.name().parse::<Observable>().unwrap(), o);
        }
        assert!("nope".parse::<Observable>().is_err());
    }
}
