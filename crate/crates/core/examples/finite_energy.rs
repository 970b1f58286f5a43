//! Single-site conditional open probabilities on the 3×3 box against the
//! finite-energy bounds.
//!
//! `cargo run --example finite_energy`

use bcp_drc::exact::vertex_measure;
use bcp_drc::orderings::{finite_energy_bounds, open_conditionals};
use bcp_drc::{build_box, BoundaryCondition, ModelParams};

fn main() -> bcp_drc::Result<()> {
    let region = build_box(2, 1)?;
    let centre = region.origin();
    for (a, p, q) in [(0.2, 0.5, 1.0), (0.5, 0.8, 2.0), (0.8, 0.3, 1.5)] {
        let m = ModelParams::from_apq(a, p, q)?;
        let (lo, hi) = finite_energy_bounds(&m, 4);
        for bc in [BoundaryCondition::Zero, BoundaryCondition::One] {
            let dist = vertex_measure(&region, &bc, &m)?;
            let (mut min, mut max) = (f64::INFINITY, f64::NEG_INFINITY);
            for x in 0..region.interior_len() {
                for (_, c) in open_conditionals(&dist, x)? {
                    min = min.min(c);
                    max = max.max(c);
                }
            }
            let at_centre = open_conditionals(&dist, centre)?;
            println!(
                "(a,p,q)=({a},{p},{q}) {bc:?}: bounds [{lo:.6}, {hi:.6}], observed [{min:.6}, {max:.6}], centre range [{:.6}, {:.6}]",
                at_centre.iter().map(|c| c.1).fold(f64::INFINITY, f64::min),
                at_centre.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max),
            );
        }
    }
    Ok(())
}
