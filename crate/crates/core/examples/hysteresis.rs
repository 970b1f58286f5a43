//! One chain carried up and then down in a at fixed p. Branches that separate
//! suggest metastability; on a small box they should coincide.
//!
//! `cargo run --release --example hysteresis`

use bcp_drc::scan::{hysteresis, Observable, ScanBoundary, ScanGrid, Sweep};

fn main() -> bcp_drc::Result<()> {
    let mut grid = ScanGrid::new(vec![(0.5, 0.9)], 2)?;
    grid.radius = 6;
    grid.boundary = ScanBoundary::Zero;
    grid.sweeps = 800;
    grid.burn_in = 200;
    grid.observables = vec![Observable::OpenVertexDensity];
    let a: Vec<f64> = (1..10).map(|i| i as f64 / 10.0).collect();
    let up = hysteresis(&grid, 0.9, &a, Sweep::Ascending)?;
    let down = hysteresis(&grid, 0.9, &a, Sweep::Descending)?;
    println!("{:>5} {:>16} {:>16}", "a", "ascending", "descending");
    for (i, row) in up.rows.iter().enumerate() {
        let j = down.rows.len() - 1 - i;
        let (u, d) = (
            up.estimate(i, Observable::OpenVertexDensity).unwrap(),
            down.estimate(j, Observable::OpenVertexDensity).unwrap(),
        );
        println!("{:>5.2} {:>8.4}±{:<7.4} {:>8.4}±{:<7.4}", row.a, u.mean, u.stderr, d.mean, d.stderr);
    }
    Ok(())
}
