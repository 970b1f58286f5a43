//! The three elementary updates: heat-bath at one site, σ → (ψ, ω), and (ψ, ω) → σ.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::config::{BitConfig, SpinConfig, ThetaConfig};
use crate::error::{Error, Result};
use crate::graph::{Region, SpinBoundary};
use crate::params::ModelParams;
use crate::union_find::UnionFind;

/// Spin-side parameters of a chain.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplerParams {
    pub k: f64,
    /// May be −∞ (a = 1: spin 0 never occurs).
    pub delta: f64,
    pub q: u8,
}

impl SamplerParams {
    pub fn new(k: f64, delta: f64, q: u8) -> Result<Self> {
        if !(k >= 0.0 && k.is_finite()) {
            return Err(Error::domain(format!("K must be finite and nonnegative, got {k}")));
        }
        if delta.is_nan() || delta == f64::INFINITY {
            return Err(Error::domain(format!("Δ must be finite or −∞, got {delta}")));
        }
        if q == 0 {
            return Err(Error::domain("the sampler needs an integer q >= 1"));
        }
        Ok(SamplerParams { k, delta, q })
    }

    pub fn from_model(m: &ModelParams) -> Result<Self> {
        Self::new(m.k(), m.delta(), m.integer_q()?)
    }

    /// Bond probability p = 1 − e^{−2K}.
    pub fn p(&self) -> f64 {
        -(-2.0 * self.k).exp_m1()
    }
}

/// Exact conditional law of σ_x given neighbour spin counts `counts[s]`,
/// s = 0..=q. Written into `out` (length q + 1).
pub(crate) fn conditional_from_counts(counts: &[u32], params: &SamplerParams, out: &mut [f64]) {
    let q = params.q as usize;
    let m: u32 = counts[1..=q].iter().sum();
    out[0] = params.delta;
    for s in 1..=q {
        out[s] = params.k * (2.0 * counts[s] as f64 - m as f64);
    }
    let max = out.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut total = 0.0;
    for w in out.iter_mut() {
        *w = (*w - max).exp();
        total += *w;
    }
    for w in out.iter_mut() {
        *w /= total;
    }
}

/// Conditional probabilities of σ_x ∈ {0, …, q} given the spins of its neighbours.
pub fn heat_bath_conditional(neighbor_spins: &[u8], params: &SamplerParams) -> Vec<f64> {
    let q = params.q as usize;
    let mut counts = vec![0u32; q + 1];
    for &s in neighbor_spins {
        counts[s as usize] += 1;
    }
    let mut out = vec![0.0; q + 1];
    conditional_from_counts(&counts, params, &mut out);
    out
}

pub(crate) fn draw<R: Rng + ?Sized>(probs: &[f64], rng: &mut R) -> usize {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (i, &p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    // Rounding left u above the last partial sum.
    probs.iter().rposition(|&p| p > 0.0).unwrap_or(0)
}

pub(crate) fn neighbor_counts(region: &Region, sigma: &[u8], boundary_spin: u8, x: usize, counts: &mut [u32]) {
    counts.iter_mut().for_each(|c| *c = 0);
    for &(y, _) in region.graph().neighbors(x) {
        let s = sigma.get(y).copied().unwrap_or(boundary_spin);
        counts[s as usize] += 1;
    }
}

/// Resample σ_x from its conditional given the rest; boundary vertices carry `boundary.spin()`.
pub fn heat_bath_site<R: Rng + ?Sized>(
    region: &Region,
    boundary: SpinBoundary,
    sigma: &mut [u8],
    x: usize,
    params: &SamplerParams,
    rng: &mut R,
) {
    let q = params.q as usize;
    let mut counts = vec![0u32; q + 1];
    let mut probs = vec![0.0; q + 1];
    neighbor_counts(region, sigma, boundary.spin(), x, &mut counts);
    conditional_from_counts(&counts, params, &mut probs);
    sigma[x] = draw(&probs, rng) as u8;
}

/// Vertex and edge states of a region of any size. `psi` covers the interior
/// only; `omega` covers every edge of Λ⁺.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bonds {
    pub psi: Vec<bool>,
    pub omega: Vec<bool>,
}

impl Bonds {
    /// Packed form, available when both vectors fit in 64 bits.
    pub fn to_theta(&self) -> Result<ThetaConfig> {
        if self.psi.len() > 64 || self.omega.len() > 64 {
            return Err(Error::Capacity {
                what: "bits in a packed (ψ, ω) pair",
                needed: self.psi.len().max(self.omega.len()) as u128,
                limit: 64,
            });
        }
        Ok(ThetaConfig {
            psi: BitConfig::from_bools(&self.psi),
            omega: BitConfig::from_bools(&self.omega),
        })
    }

    /// Whether every open edge joins two open vertices (boundary vertices are
    /// open iff `boundary_open`).
    pub fn is_compatible(&self, region: &Region, boundary_open: bool) -> bool {
        let n = region.interior_len();
        let open = |v: usize| if v < n { self.psi[v] } else { boundary_open };
        region
            .graph()
            .edges()
            .iter()
            .zip(&self.omega)
            .all(|(&(u, v), &w)| !w || (open(u) && open(v)))
    }
}

/// ψ_x = 1 − δ(σ_x, 0); each edge whose endpoints carry the same nonzero spin
/// is opened with probability p, all others are closed.
pub fn spin_to_bond<R: Rng + ?Sized>(
    region: &Region,
    boundary: SpinBoundary,
    sigma: &[u8],
    p: f64,
    rng: &mut R,
) -> Bonds {
    let b = boundary.spin();
    let psi: Vec<bool> = sigma.iter().map(|&s| s != 0).collect();
    let omega = region
        .graph()
        .edges()
        .iter()
        .map(|&(u, v)| {
            let su = sigma.get(u).copied().unwrap_or(b);
            let sv = sigma.get(v).copied().unwrap_or(b);
            su != 0 && su == sv && p > 0.0 && rng.gen::<f64>() < p
        })
        .collect();
    let bonds = Bonds { psi, omega };
    debug_assert!(bonds.is_compatible(region, b != 0));
    bonds
}

/// Closed vertices get spin 0; every open cluster gets an independent uniform
/// spin in {1, …, q}, except that clusters meeting ∂Λ take the boundary spin
/// when it is nonzero.
pub fn bond_to_spin<R: Rng + ?Sized>(
    region: &Region,
    boundary: SpinBoundary,
    bonds: &Bonds,
    q: u8,
    rng: &mut R,
) -> SpinConfig {
    let mut uf = UnionFind::new(region.closure_len());
    let mut root_spin = vec![0u8; region.closure_len()];
    SpinConfig(assign_cluster_spins(region, boundary, bonds, q, rng, &mut uf, &mut root_spin))
}

pub(crate) fn assign_cluster_spins<R: Rng + ?Sized>(
    region: &Region,
    boundary: SpinBoundary,
    bonds: &Bonds,
    q: u8,
    rng: &mut R,
    uf: &mut UnionFind,
    root_spin: &mut [u8],
) -> Vec<u8> {
    let n = region.interior_len();
    let total = region.closure_len();
    uf.reset(total);
    root_spin.iter_mut().for_each(|s| *s = 0);
    for (&(u, v), &w) in region.graph().edges().iter().zip(&bonds.omega) {
        if w {
            uf.union(u, v);
        }
    }
    let b = boundary.spin();
    if b != 0 {
        for v in n..total {
            let r = uf.find(v);
            root_spin[r] = b;
        }
    }
    (0..n)
        .map(|x| {
            if !bonds.psi[x] {
                return 0;
            }
            let r = uf.find(x);
            if root_spin[r] == 0 {
                root_spin[r] = rng.gen_range(1..=q);
            }
            root_spin[r]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn graph_region(g: Graph) -> Region {
        Region::from_graph(g)
    }

    #[test]
    fn conditional_example() {
        let params = SamplerParams::new(0.5, 0.2, 2).unwrap();
        let got = heat_bath_conditional(&[1, 0, 2, 1], &params);
        let w = [0.2f64.exp(), 0.5f64.exp(), (-0.5f64).exp()];
        let z: f64 = w.iter().sum();
        for (g, w) in got.iter().zip(w) {
            assert!((g - w / z).abs() < 1e-15);
        }
    }

    #[test]
    fn conditional_limits() {
        let uniform = heat_bath_conditional(&[1, 2, 0], &SamplerParams::new(0.0, 0.0, 3).unwrap());
        assert!(uniform.iter().all(|&p| (p - 0.25).abs() < 1e-15));
        let closed = heat_bath_conditional(&[1, 1], &SamplerParams::new(0.3, f64::NEG_INFINITY, 2).unwrap());
        assert_eq!(closed[0], 0.0);
        let zero = heat_bath_conditional(&[1, 1], &SamplerParams::new(0.3, 80.0, 2).unwrap());
        assert!(zero[1] < 1e-30 && zero[2] < 1e-30);
    }

    #[test]
    fn spin_to_bond_trivial_cases() {
        let r = graph_region(Graph::complete(3));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let b = spin_to_bond(&r, SpinBoundary::Free, &[0, 0, 0], 0.9, &mut rng);
        assert!(b.psi.iter().all(|&x| !x) && b.omega.iter().all(|&x| !x));
        let b = spin_to_bond(&r, SpinBoundary::Free, &[1, 1, 1], 0.0, &mut rng);
        assert!(b.psi.iter().all(|&x| x) && b.omega.iter().all(|&x| !x));
    }

    #[test]
    fn bond_frequency_on_k2() {
        let r = graph_region(Graph::complete(2));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 100_000;
        let hits = (0..n)
            .filter(|_| spin_to_bond(&r, SpinBoundary::Free, &[1, 1], 0.5, &mut rng).omega[0])
            .count();
        let sd = (0.25 / n as f64).sqrt();
        assert!((hits as f64 / n as f64 - 0.5).abs() < 3.0 * sd);
    }

    #[test]
    fn bond_to_spin_cases() {
        let r = graph_region(Graph::complete(2));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let joined = Bonds { psi: vec![true, true], omega: vec![true] };
        for _ in 0..100 {
            let s = bond_to_spin(&r, SpinBoundary::Free, &joined, 3, &mut rng);
            assert_eq!(s.0[0], s.0[1]);
        }
        let q1 = bond_to_spin(&r, SpinBoundary::Free, &Bonds { psi: vec![true, false], omega: vec![false] }, 1, &mut rng);
        assert_eq!(q1.0, vec![1, 0]);

        let split = Bonds { psi: vec![true, true], omega: vec![false] };
        let n = 100_000;
        let mut counts = [0usize; 4];
        for _ in 0..n {
            let s = bond_to_spin(&r, SpinBoundary::Free, &split, 2, &mut rng);
            counts[((s.0[0] - 1) * 2 + s.0[1] - 1) as usize] += 1;
        }
        let sd = (0.25 * 0.75 / n as f64).sqrt();
        for c in counts {
            assert!((c as f64 / n as f64 - 0.25).abs() < 3.0 * sd, "{counts:?}");
        }
    }

    #[test]
    fn wired_clusters_take_boundary_spin() {
        let r = crate::graph::build_box(1, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        // Interior sites -1, 0, 1 are vertices 0, 1, 2; vertex 3 is the boundary site -2.
        let omega: Vec<bool> = r
            .graph()
            .edges()
            .iter()
            .map(|&(u, v)| (u == 0 && v == 1) || (u.max(v) >= 3 && u.min(v) == 0))
            .collect();
        let bonds = Bonds { psi: vec![true, true, true], omega };
        for _ in 0..50 {
            let s = bond_to_spin(&r, SpinBoundary::Fixed(2), &bonds, 3, &mut rng);
            assert_eq!(&s.0[..2], &[2, 2]);
            assert!(s.0[2] >= 1);
        }
    }
}
