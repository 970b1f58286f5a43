//! Both marginals of the spin/bond coupling against the direct tables,
//! plus the partition-function and two-point identities, on a 4-cycle.
//!
//! `cargo run --example coupling_check`

use bcp_drc::exact::{
    bcp_measure, connectivity, coupling_measure, drc_measure, spin_marginal, theta_marginal, two_point_from_spins,
    Target,
};
use bcp_drc::{Graph, ModelParams};

fn main() -> bcp_drc::Result<()> {
    let g = Graph::cycle(4)?;
    println!("{:>5} {:>5} {:>2} {:>10} {:>10} {:>10} {:>10}", "K", "Delta", "q", "spin dev", "bond dev", "Z rel err", "tau err");
    for k in [0.0, 0.3, 1.0] {
        for delta in [-1.0, 0.0, 1.0] {
            for q in 1u8..=3 {
                let m = ModelParams::from_bcp(k, delta, q as f64)?;
                let mu = coupling_measure(&g, k, delta, q)?;
                let bcp = bcp_measure(&g, k, delta, q)?;
                let drc = drc_measure(&g, &m)?;
                let z_err = (bcp.log_total() - drc.log_total() - 4.0 * delta).exp_m1().abs();
                let tau = two_point_from_spins(&bcp, q, 0, 0, Target::Vertex(2));
                let phi = connectivity(&g, &drc, 0, 2)?;
                println!(
                    "{k:>5} {delta:>5} {q:>2} {:>10.2e} {:>10.2e} {:>10.2e} {:>10.2e}",
                    spin_marginal(&mu).max_abs_diff(&bcp),
                    theta_marginal(&mu).max_abs_diff(&drc),
                    z_err,
                    (tau - (1.0 - 1.0 / q as f64) * phi).abs()
                );
            }
        }
    }
    Ok(())
}
