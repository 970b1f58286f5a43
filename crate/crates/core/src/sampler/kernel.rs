//! Transition matrices of the sweep moves, built by enumeration on small regions.

use std::collections::HashMap;

use crate::config::{submasks, SpinConfig};
use crate::dist::FiniteDistribution;
use crate::error::{Error, Result};
use crate::graph::{Region, SpinBoundary};
use crate::union_find::UnionFind;

use super::moves::{conditional_from_counts, neighbor_counts, SamplerParams};

/// Largest state space for which kernels are built.
pub const MAX_KERNEL_STATES: usize = 4096;

/// A row-stochastic matrix over all spin vectors of a region, in
/// [`SpinConfig::all`] order.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinKernel {
    pub states: Vec<SpinConfig>,
    pub matrix: Vec<Vec<f64>>,
}

fn states_for(region: &Region, boundary: SpinBoundary, params: &SamplerParams) -> Result<Vec<SpinConfig>> {
    if boundary.spin() > params.q {
        return Err(Error::domain("boundary spin exceeds q"));
    }
    let n = region.interior_len();
    let count = (params.q as u128 + 1).checked_pow(n as u32).unwrap_or(u128::MAX);
    if count > MAX_KERNEL_STATES as u128 || region.graph().num_edges() > 64 {
        return Err(Error::Capacity {
            what: "kernel states",
            needed: count,
            limit: MAX_KERNEL_STATES as u128,
        });
    }
    Ok(SpinConfig::all(n, params.q).collect())
}

impl SpinKernel {
    /// Row vector times matrix.
    pub fn apply(&self, dist: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.states.len()];
        for (i, row) in self.matrix.iter().enumerate() {
            if dist[i] != 0.0 {
                for (o, &p) in out.iter_mut().zip(row) {
                    *o += dist[i] * p;
                }
            }
        }
        out
    }

    /// The kernel of "self, then other".
    pub fn then(&self, other: &SpinKernel) -> SpinKernel {
        SpinKernel {
            states: self.states.clone(),
            matrix: self.matrix.iter().map(|row| other.apply(row)).collect(),
        }
    }

    /// Probability vector of `pi` in state order.
    pub fn vector(&self, pi: &FiniteDistribution<SpinConfig>) -> Vec<f64> {
        self.states.iter().map(|s| pi.prob(s)).collect()
    }

    /// max_σ |(πP)(σ) − π(σ)|.
    pub fn stationarity_error(&self, pi: &FiniteDistribution<SpinConfig>) -> f64 {
        let v = self.vector(pi);
        self.apply(&v)
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// max |π(σ)P(σ→σ′) − π(σ′)P(σ′→σ)|.
    pub fn detailed_balance_error(&self, pi: &FiniteDistribution<SpinConfig>) -> f64 {
        let v = self.vector(pi);
        let mut worst = 0.0f64;
        for i in 0..v.len() {
            for j in 0..i {
                worst = worst.max((v[i] * self.matrix[i][j] - v[j] * self.matrix[j][i]).abs());
            }
        }
        worst
    }

    /// max over rows of |Σ_j P(i, j) − 1|.
    pub fn row_sum_error(&self) -> f64 {
        self.matrix
            .iter()
            .map(|row| (row.iter().sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Heat-bath update at the single interior site `x`.
pub fn heat_bath_kernel(region: &Region, boundary: SpinBoundary, params: &SamplerParams, x: usize) -> Result<SpinKernel> {
    let states = states_for(region, boundary, params)?;
    if x >= region.interior_len() {
        return Err(Error::invalid(format!("vertex {x} is not interior")));
    }
    let q = params.q as usize;
    let mut kernel = SpinKernel {
        matrix: vec![vec![0.0; states.len()]; states.len()],
        states,
    };
    let index: HashMap<SpinConfig, usize> = kernel.states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let mut counts = vec![0u32; q + 1];
    let mut probs = vec![0.0; q + 1];
    for (i, s) in kernel.states.iter().enumerate() {
        neighbor_counts(region, s.spins(), boundary.spin(), x, &mut counts);
        conditional_from_counts(&counts, params, &mut probs);
        for (v, &pr) in probs.iter().enumerate() {
            let mut t = s.clone();
            t.0[x] = v as u8;
            kernel.matrix[i][index[&t]] += pr;
        }
    }
    Ok(kernel)
}

/// One cluster step σ → (ψ, ω) → σ′.
pub fn cluster_kernel(region: &Region, boundary: SpinBoundary, params: &SamplerParams) -> Result<SpinKernel> {
    let states = states_for(region, boundary, params)?;
    let n = region.interior_len();
    let total = region.closure_len();
    let b = boundary.spin();
    let p = params.p();
    let q = params.q as f64;
    let edges = region.graph().edges();
    let spin = |s: &SpinConfig, v: usize| if v < n { s.0[v] } else { b };

    let mut kernel = SpinKernel {
        matrix: vec![vec![0.0; states.len()]; states.len()],
        states,
    };
    let mut uf = UnionFind::new(total);
    for i in 0..kernel.states.len() {
        let s = &kernel.states[i];
        let mut agree = 0u64;
        for (e, &(u, v)) in edges.iter().enumerate() {
            if spin(s, u) != 0 && spin(s, u) == spin(s, v) {
                agree |= 1 << e;
            }
        }
        let m = agree.count_ones() as i32;
        for w in submasks(agree) {
            let k = w.count_ones() as i32;
            let pw = p.powi(k) * (1.0 - p).powi(m - k);
            if pw == 0.0 {
                continue;
            }
            uf.reset(total);
            for (e, &(u, v)) in edges.iter().enumerate() {
                if w >> e & 1 == 1 {
                    uf.union(u, v);
                }
            }
            if b != 0 {
                for v in n + 1..total {
                    uf.union(n, v);
                }
            }
            let boundary_root = (b != 0 && total > n).then(|| uf.find(n));
            let free_clusters = (0..n)
                .filter(|&x| s.0[x] != 0 && uf.find(x) == x && Some(x) != boundary_root)
                .count() as i32;
            let each = pw * q.powi(-free_clusters);
            // σ′ keeps the zero set, is constant on clusters and equals b on the boundary cluster.
            let roots: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
            for (j, t) in kernel.states.iter().enumerate() {
                let mut label = vec![0u8; total];
                if let Some(r) = boundary_root {
                    label[r] = b;
                }
                let ok = (0..n).all(|x| {
                    if (s.0[x] == 0) != (t.0[x] == 0) {
                        return false;
                    }
                    if t.0[x] == 0 {
                        return true;
                    }
                    let r = roots[x];
                    if label[r] == 0 {
                        label[r] = t.0[x];
                    }
                    label[r] == t.0[x]
                });
                if ok {
                    kernel.matrix[i][j] += each;
                }
            }
        }
    }
    Ok(kernel)
}

/// The full sweep: heat-bath at sites 0, 1, …, n−1 in raster order, then one cluster step.
pub fn sweep_kernel(region: &Region, boundary: SpinBoundary, params: &SamplerParams) -> Result<SpinKernel> {
    let mut kernel = heat_bath_kernel(region, boundary, params, 0)?;
    for x in 1..region.interior_len() {
        kernel = kernel.then(&heat_bath_kernel(region, boundary, params, x)?);
    }
    Ok(kernel.then(&cluster_kernel(region, boundary, params)?))
}
