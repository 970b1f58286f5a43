//! Vertex-marginal comparisons on a 2×2 box: the sufficient conditions and
//! what the exact dominance oracle says for the same pairs.
//!
//! `cargo run --example stochastic_ordering`

use bcp_drc::exact::vertex_measure;
use bcp_drc::graph::DEFAULT_MAX_REGION_VERTICES;
use bcp_drc::orderings::{dominance_report, thm54_condition, BinaryMeasure, Thm54};
use bcp_drc::{BoundaryCondition, ModelParams, Region};

fn phi(region: &Region, bc: &BoundaryCondition, m: &ModelParams) -> bcp_drc::Result<BinaryMeasure> {
    BinaryMeasure::from_distribution(&vertex_measure(region, bc, m)?)
}

fn main() -> bcp_drc::Result<()> {
    let region = Region::box_between(&[0, 0], &[1, 1], DEFAULT_MAX_REGION_VERTICES)?;
    let delta = region.degree_bound();
    let pairs = [
        ((0.3, 0.4, 2.0), (0.5, 0.6, 2.0)),
        ((0.5, 0.5, 2.0), (0.3, 0.5, 2.0)),
        ((0.2, 0.2, 2.0), (0.4, 0.1, 1.0)),
        ((0.4, 0.3, 1.0), (0.4, 0.5, 1.5)),
    ];
    for ((a1, p1, q1), (a2, p2, q2)) in pairs {
        let m1 = ModelParams::from_apq(a1, p1, q1)?;
        let m2 = ModelParams::from_apq(a2, p2, q2)?;
        let conds: Vec<String> = Thm54::ALL
            .iter()
            .map(|&w| format!("{}={}", w.name(), thm54_condition(w, &m1, &m2, delta).unwrap_or(false)))
            .collect();
        for bc in [BoundaryCondition::Zero, BoundaryCondition::One] {
            let rep = dominance_report(&phi(&region, &bc, &m1)?, &phi(&region, &bc, &m2)?)?;
            println!(
                "({a1},{p1},{q1}) vs ({a2},{p2},{q2}) {bc:?}: [{}] oracle {} (worst gap {:.3e})",
                conds.join(" "),
                rep.holds,
                rep.worst_gap
            );
        }
    }

    let m = ModelParams::from_apq(0.4, 0.6, 2.0)?;
    let rep = dominance_report(
        &phi(&region, &BoundaryCondition::Zero, &m)?,
        &phi(&region, &BoundaryCondition::One, &m)?,
    )?;
    println!("ZERO below ONE at (0.4, 0.6, 2): {} over {} up-sets", rep.holds, rep.upsets_checked);
    Ok(())
}
