//! Heat-bath plus cluster Monte Carlo for the BCP measure.
//!
//! A sweep is one heat-bath pass over the interior sites followed by one
//! cluster step σ → (ψ, ω) → σ′ through the coupling. The cluster step alone
//! never changes which sites carry spin 0, so the heat-bath pass is what makes
//! the chain irreducible.
//!
//! Random numbers: a chain with seed `s` and stream `t` uses
//! `ChaCha8Rng::seed_from_u64(s)` followed by `set_stream(t)`. Chain `i` of a
//! multi-chain run uses stream `i`, and grid point `i` of a scan uses stream `i`.

mod chain;
mod kernel;
mod moves;

pub use crate::union_find::UnionFind;
pub use chain::{
    chain_rng, continue_chain, run_chain, run_chains, sample_spins, ChainState, InitialState,
    ObservableSeries, RunSettings, Sampler, Schedule, CHECKPOINT_VERSION,
};
pub use kernel::{cluster_kernel, heat_bath_kernel, sweep_kernel, SpinKernel, MAX_KERNEL_STATES};
pub use moves::{
    bond_to_spin, heat_bath_conditional, heat_bath_site, spin_to_bond, Bonds, SamplerParams,
};
