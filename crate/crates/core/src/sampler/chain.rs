//! Chains: state, checkpoints, sweeps and observable series.

use std::io::Write;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::SpinConfig;
use crate::error::{Error, Result};
use crate::graph::{Region, SpinBoundary};
use crate::scan::{ObservableContext, Observable};
use crate::union_find::UnionFind;

use super::moves::{assign_cluster_spins, conditional_from_counts, draw, neighbor_counts, spin_to_bond, Bonds, SamplerParams};

pub const CHECKPOINT_VERSION: u32 = 1;

/// Order of the heat-bath pass.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Schedule {
    #[default]
    Raster,
    /// A fresh uniform permutation of the sites each sweep.
    Permutation,
}

/// Starting configuration of a chain.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialState {
    /// Independent uniform spins in {0, …, q}.
    #[default]
    Random,
    Constant(u8),
}

/// The generator for a given seed and stream.
pub fn chain_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainState {
    pub sigma: SpinConfig,
    /// Completed sweeps.
    pub sweep: u64,
    pub rng: ChaCha8Rng,
}

#[derive(Serialize, Deserialize)]
struct Snapshot {
    version: u32,
    sigma: SpinConfig,
    sweep: u64,
    rng: ChaCha8Rng,
}

impl ChainState {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&Snapshot {
            version: CHECKPOINT_VERSION,
            sigma: self.sigma.clone(),
            sweep: self.sweep,
            rng: self.rng.clone(),
        })?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let snap: Snapshot = serde_json::from_str(text)?;
        if snap.version != CHECKPOINT_VERSION {
            return Err(Error::invalid(format!(
                "checkpoint version {} is not supported (expected {CHECKPOINT_VERSION})",
                snap.version
            )));
        }
        Ok(ChainState {
            sigma: snap.sigma,
            sweep: snap.sweep,
            rng: snap.rng,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// A region, boundary and parameter set with scratch space for sweeps.
#[derive(Clone, Debug)]
pub struct Sampler {
    region: Region,
    boundary: SpinBoundary,
    params: SamplerParams,
    schedule: Schedule,
    p: f64,
    counts: Vec<u32>,
    probs: Vec<f64>,
    order: Vec<usize>,
    uf: UnionFind,
    root_spin: Vec<u8>,
}

impl Sampler {
    pub fn new(region: Region, boundary: SpinBoundary, params: SamplerParams, schedule: Schedule) -> Result<Self> {
        if boundary.spin() > params.q {
            return Err(Error::domain(format!(
                "boundary spin {} exceeds q = {}",
                boundary.spin(),
                params.q
            )));
        }
        if region.interior_len() == 0 {
            return Err(Error::invalid("region has no interior vertices"));
        }
        let q = params.q as usize;
        let total = region.closure_len();
        Ok(Sampler {
            p: params.p(),
            counts: vec![0; q + 1],
            probs: vec![0.0; q + 1],
            order: (0..region.interior_len()).collect(),
            uf: UnionFind::new(total),
            root_spin: vec![0; total],
            region,
            boundary,
            params,
            schedule,
        })
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn boundary(&self) -> SpinBoundary {
        self.boundary
    }

    pub fn params(&self) -> &SamplerParams {
        &self.params
    }

    pub fn initial_state(&self, init: InitialState, seed: u64, stream: u64) -> Result<ChainState> {
        let mut rng = chain_rng(seed, stream);
        let n = self.region.interior_len();
        let sigma = match init {
            InitialState::Random => (0..n).map(|_| rng.gen_range(0..=self.params.q)).collect(),
            InitialState::Constant(s) if s <= self.params.q => vec![s; n],
            InitialState::Constant(s) => {
                return Err(Error::domain(format!("initial spin {s} exceeds q = {}", self.params.q)))
            }
        };
        Ok(ChainState {
            sigma: SpinConfig(sigma),
            sweep: 0,
            rng,
        })
    }

    fn check_state(&self, state: &ChainState) -> Result<()> {
        if state.sigma.len() != self.region.interior_len() {
            return Err(Error::invalid(format!(
                "state has {} spins, region has {} interior vertices",
                state.sigma.len(),
                self.region.interior_len()
            )));
        }
        if state.sigma.spins().iter().any(|&s| s > self.params.q) {
            return Err(Error::invalid("state has a spin above q"));
        }
        Ok(())
    }

    /// Heat-bath update of every interior site once.
    pub fn heat_bath_pass(&mut self, state: &mut ChainState) {
        if self.schedule == Schedule::Permutation {
            self.order.shuffle(&mut state.rng);
        }
        let b = self.boundary.spin();
        let sigma = &mut state.sigma.0;
        for &x in &self.order {
            neighbor_counts(&self.region, sigma, b, x, &mut self.counts);
            conditional_from_counts(&self.counts, &self.params, &mut self.probs);
            sigma[x] = draw(&self.probs, &mut state.rng) as u8;
        }
    }

    /// σ → (ψ, ω) → σ′. Returns the intermediate bonds, which together with
    /// the new σ form a sample of the coupling when σ was a sample of π.
    pub fn cluster_step(&mut self, state: &mut ChainState) -> Bonds {
        let bonds = spin_to_bond(&self.region, self.boundary, state.sigma.spins(), self.p, &mut state.rng);
        state.sigma.0 = assign_cluster_spins(
            &self.region,
            self.boundary,
            &bonds,
            self.params.q,
            &mut state.rng,
            &mut self.uf,
            &mut self.root_spin,
        );
        bonds
    }

    /// One heat-bath pass then one cluster step.
    pub fn sweep(&mut self, state: &mut ChainState) -> Bonds {
        self.heat_bath_pass(state);
        let bonds = self.cluster_step(state);
        state.sweep += 1;
        bonds
    }
}

/// Length and sampling pattern of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunSettings {
    /// Total sweeps, burn-in included.
    pub sweeps: u64,
    pub burn_in: u64,
    /// Record every `thin`-th sweep after burn-in.
    pub thin: u64,
    pub seed: u64,
    pub stream: u64,
    #[serde(default)]
    pub schedule: Schedule,
    #[serde(default)]
    pub init: InitialState,
}

impl Default for RunSettings {
    fn default() -> Self {
        RunSettings {
            sweeps: 2000,
            burn_in: 500,
            thin: 1,
            seed: 0,
            stream: 0,
            schedule: Schedule::Raster,
            init: InitialState::Random,
        }
    }
}

impl RunSettings {
    pub fn validate(&self) -> Result<()> {
        if self.thin == 0 {
            return Err(Error::invalid("thin must be at least 1"));
        }
        if self.burn_in >= self.sweeps {
            return Err(Error::invalid(format!(
                "burn-in ({}) must be smaller than the number of sweeps ({}); the series would be empty",
                self.burn_in, self.sweeps
            )));
        }
        Ok(())
    }

    fn records(&self, sweep: u64) -> bool {
        sweep > self.burn_in && (sweep - self.burn_in).is_multiple_of(self.thin)
    }
}

/// Per-sample observable values from one or more chains.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObservableSeries {
    pub names: Vec<String>,
    pub chain: Vec<u64>,
    pub sweep: Vec<u64>,
    /// `values[i][j]`: observable `j` at sample `i`.
    pub values: Vec<Vec<f64>>,
}

impl ObservableSeries {
    pub fn new(observables: &[Observable]) -> Self {
        ObservableSeries {
            names: observables.iter().map(|o| o.name().to_string()).collect(),
            chain: Vec::new(),
            sweep: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.values.iter().map(|row| row[j]).collect()
    }

    pub fn column_by(&self, obs: Observable) -> Option<Vec<f64>> {
        self.column_index(obs.name()).map(|j| self.column(j))
    }

    pub fn mean(&self, j: usize) -> f64 {
        self.values.iter().map(|row| row[j]).sum::<f64>() / self.len() as f64
    }

    /// Concatenate series with the same columns, in the given order.
    pub fn merge(parts: &[ObservableSeries]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::invalid("nothing to merge"))?;
        let mut out = ObservableSeries {
            names: first.names.clone(),
            chain: Vec::new(),
            sweep: Vec::new(),
            values: Vec::new(),
        };
        for s in parts {
            if s.names != out.names {
                return Err(Error::invalid("series have different observables"));
            }
            out.chain.extend(&s.chain);
            out.sweep.extend(&s.sweep);
            out.values.extend(s.values.iter().cloned());
        }
        Ok(out)
    }

    /// CSV with columns chain, sweep, then one column per observable.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["chain".to_string(), "sweep".to_string()];
        header.extend(self.names.iter().cloned());
        w.write_record(&header)?;
        for ((c, s), row) in self.chain.iter().zip(&self.sweep).zip(&self.values) {
            let mut rec = vec![c.to_string(), s.to_string()];
            rec.extend(row.iter().map(|v| format!("{v:.16e}")));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Continue `state` until `settings.sweeps` sweeps are complete, recording
/// observables at the sampling sweeps. A resumed state past burn-in records
/// from its next sweep on.
pub fn continue_chain(
    sampler: &mut Sampler,
    state: &mut ChainState,
    settings: &RunSettings,
    observables: &[Observable],
) -> Result<ObservableSeries> {
    settings.validate()?;
    sampler.check_state(state)?;
    let region = sampler.region().clone();
    let ctx = ObservableContext::new(&region, sampler.boundary(), sampler.params().q);
    let mut series = ObservableSeries::new(observables);
    while state.sweep < settings.sweeps {
        let bonds = sampler.sweep(state);
        if settings.records(state.sweep) {
            series.chain.push(settings.stream);
            series.sweep.push(state.sweep);
            series.values.push(ctx.measure(observables, state.sigma.spins(), &bonds));
        }
    }
    Ok(series)
}

/// Run one chain from its initial state.
pub fn run_chain(
    region: &Region,
    boundary: SpinBoundary,
    params: SamplerParams,
    settings: &RunSettings,
    observables: &[Observable],
) -> Result<ObservableSeries> {
    settings.validate()?;
    let mut sampler = Sampler::new(region.clone(), boundary, params, settings.schedule)?;
    let mut state = sampler.initial_state(settings.init, settings.seed, settings.stream)?;
    continue_chain(&mut sampler, &mut state, settings, observables)
}

/// `chains` independent chains in parallel; chain i uses stream i.
pub fn run_chains(
    region: &Region,
    boundary: SpinBoundary,
    params: SamplerParams,
    settings: &RunSettings,
    observables: &[Observable],
    chains: u64,
) -> Result<Vec<ObservableSeries>> {
    (0..chains)
        .into_par_iter()
        .map(|i| {
            let s = RunSettings { stream: i, ..*settings };
            run_chain(region, boundary, params, &s, observables)
        })
        .collect()
}

/// Empirical spin distribution of one chain, recording σ at the sampling sweeps.
pub fn sample_spins(
    region: &Region,
    boundary: SpinBoundary,
    params: SamplerParams,
    settings: &RunSettings,
) -> Result<Vec<SpinConfig>> {
    settings.validate()?;
    let mut sampler = Sampler::new(region.clone(), boundary, params, settings.schedule)?;
    let mut state = sampler.initial_state(settings.init, settings.seed, settings.stream)?;
    let mut out = Vec::new();
    while state.sweep < settings.sweeps {
        sampler.sweep(&mut state);
        if settings.records(state.sweep) {
            out.push(state.sigma.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn k2_sampler() -> Sampler {
        let params = SamplerParams::new(0.5 * 2f64.ln(), 0.0, 2).unwrap();
        Sampler::new(Region::from_graph(Graph::complete(2)), SpinBoundary::Free, params, Schedule::Raster).unwrap()
    }

    #[test]
    fn checkpoint_round_trip_is_bit_identical() {
        let mut a = k2_sampler();
        let mut state = a.initial_state(InitialState::Random, 11, 0).unwrap();
        for _ in 0..10 {
            a.sweep(&mut state);
        }
        let restored = ChainState::from_json(&state.to_json().unwrap()).unwrap();
        assert_eq!(restored, state);
        let mut b = k2_sampler();
        let mut s2 = restored;
        for _ in 0..20 {
            a.sweep(&mut state);
            b.sweep(&mut s2);
        }
        assert_eq!(state, s2);
    }

    #[test]
    fn bad_checkpoint_version() {
        let text = k2_sampler()
            .initial_state(InitialState::Constant(1), 1, 0)
            .unwrap()
            .to_json()
            .unwrap()
            .replace("\"version\":1", "\"version\":99");
        assert!(matches!(ChainState::from_json(&text), Err(Error::Invalid(_))));
    }

    #[test]
    fn settings_validation() {
        let s = RunSettings { sweeps: 10, burn_in: 10, ..Default::default() };
        assert!(s.validate().is_err());
        let s = RunSettings { sweeps: 11, burn_in: 10, thin: 0, ..Default::default() };
        assert!(s.validate().is_err());
    }

    #[test]
    fn same_seed_same_output() {
        let r = crate::graph::build_box(2, 2).unwrap();
        let p = SamplerParams::new(0.8, 0.1, 2).unwrap();
        let s = RunSettings { sweeps: 60, burn_in: 10, seed: 9, ..Default::default() };
        let obs = Observable::ALL;
        let a = run_chain(&r, SpinBoundary::Fixed(1), p, &s, &obs).unwrap();
        let b = run_chain(&r, SpinBoundary::Fixed(1), p, &s, &obs).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 50);
    }
}
