//! Derivatives of ln Z as expectations against central finite differences.
//!
//! `cargo run --example derivatives -- [step]`

use bcp_drc::exact::{finite_difference_derivatives, log_partition_derivatives};
use bcp_drc::graph::DEFAULT_MAX_REGION_VERTICES;
use bcp_drc::{BoundaryCondition, ModelParams, Region};

fn main() -> bcp_drc::Result<()> {
    let region = Region::box_between(&[0, 0], &[1, 1], DEFAULT_MAX_REGION_VERTICES)?;
    println!("{:>5} {:>5} {:>3} {:>12} {:>12} {:>12} {:>12}", "K", "Delta", "bc", "dZ/dDelta", "fd", "var|V|", "fd");
    for (k, delta) in [(0.3, 0.0), (0.8, 1.0), (1.5, -0.5)] {
        let m = ModelParams::from_bcp(k, delta, 2.0)?;
        for (name, bc) in [("0", BoundaryCondition::Zero), ("1", BoundaryCondition::One)] {
            let exact = log_partition_derivatives(&region, &bc, &m)?;
            let fd = finite_difference_derivatives(&region, &bc, &m, std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1e-4))?;
            println!(
                "{k:>5} {delta:>5} {name:>3} {:>12.8} {:>12.8} {:>12.8} {:>12.8}",
                exact.d_delta, fd.d_delta, exact.d2_delta, fd.d2_delta
            );
        }
    }
    Ok(())
}
