//! Empirical spin law of the heat-bath plus cluster chain against the exact
//! table on a triangle, and kernel stationarity on the 3-path.
//!
//! `cargo run --release --example sampler_vs_exact`

use std::collections::BTreeMap;

use bcp_drc::exact::bcp_measure;
use bcp_drc::sampler::{sample_spins, sweep_kernel, RunSettings, SamplerParams};
use bcp_drc::{FiniteDistribution, Graph, Region, SpinBoundary, SpinConfig};

fn main() -> bcp_drc::Result<()> {
    let (k, delta, q) = (0.6, -0.3, 2);
    let params = SamplerParams::new(k, delta, q)?;

    let path = Region::from_graph(Graph::path(3));
    let kernel = sweep_kernel(&path, SpinBoundary::Free, &params)?;
    let pi = bcp_measure(path.graph(), k, delta, q)?;
    println!("3-path: |pi P - pi| = {:.2e} over {} states", kernel.stationarity_error(&pi), kernel.states.len());

    let tri = Region::from_graph(Graph::complete(3));
    let exact = bcp_measure(tri.graph(), k, delta, q)?;
    let settings = RunSettings {
        sweeps: 201_000,
        burn_in: 1000,
        thin: 2,
        seed: 1,
        ..RunSettings::default()
    };
    let mut counts: BTreeMap<SpinConfig, f64> = BTreeMap::new();
    for s in sample_spins(&tri, SpinBoundary::Free, params, &settings)? {
        *counts.entry(s).or_default() += 1.0;
    }
    let emp = FiniteDistribution::from_weights(counts)?;
    println!("triangle: TV(empirical, exact) = {:.4} with 1e5 samples", emp.total_variation(&exact));
    for (s, p) in exact.iter().take(8) {
        println!("  {}  exact {p:.4}  sampled {:.4}", s.label(), emp.prob(s));
    }
    Ok(())
}
