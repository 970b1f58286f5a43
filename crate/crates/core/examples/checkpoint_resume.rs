//! Stop a chain, save it, reload it and finish the run; the series matches an
//! uninterrupted run sample for sample.
//!
//! `cargo run --example checkpoint_resume`

use bcp_drc::sampler::{
    continue_chain, run_chain, ChainState, InitialState, ObservableSeries, RunSettings, Sampler, SamplerParams,
    Schedule,
};
use bcp_drc::scan::Observable;
use bcp_drc::{build_box, SpinBoundary};

fn main() -> bcp_drc::Result<()> {
    let region = build_box(2, 3)?;
    let params = SamplerParams::new(0.7, 0.1, 3)?;
    let obs = [Observable::OpenVertexDensity, Observable::Magnetization];
    let settings = |sweeps| RunSettings {
        sweeps,
        burn_in: 50,
        seed: 9,
        ..RunSettings::default()
    };

    let full = run_chain(&region, SpinBoundary::Free, params, &settings(400), &obs)?;

    let mut sampler = Sampler::new(region.clone(), SpinBoundary::Free, params, Schedule::Raster)?;
    let mut state = sampler.initial_state(InitialState::Random, 9, 0)?;
    let first = continue_chain(&mut sampler, &mut state, &settings(250), &obs)?;
    let path = std::env::temp_dir().join("bcp-checkpoint-example.json");
    state.save(&path)?;
    println!("saved after sweep {} to {}", state.sweep, path.display());

    let mut restored = ChainState::load(&path)?;
    let mut fresh = Sampler::new(region, SpinBoundary::Free, params, Schedule::Raster)?;
    let second = continue_chain(&mut fresh, &mut restored, &settings(400), &obs)?;
    let joined = ObservableSeries::merge(&[first, second])?;
    println!("{} + resumed rows equal the uninterrupted run: {}", joined.len(), joined == full);
    std::fs::remove_file(path).ok();
    Ok(())
}
