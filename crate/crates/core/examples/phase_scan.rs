//! A coarse (a, p) scan of the open-vertex density and the boundary connection
//! probability for q = 2 on a small box with wired boundary.
//!
//! `cargo run --release --example phase_scan`

use bcp_drc::scan::{scan, Observable, ScanBoundary, ScanGrid};

fn main() -> bcp_drc::Result<()> {
    let values = [0.1, 0.3, 0.5, 0.7, 0.9];
    let mut grid = ScanGrid::product(&values, &values, 2)?;
    grid.radius = 8;
    grid.boundary = ScanBoundary::One;
    grid.sweeps = 1500;
    grid.burn_in = 300;
    grid.observables = vec![Observable::OpenVertexDensity, Observable::BoundaryConnection];
    let table = scan(&grid, None)?;
    table.write_csv(std::io::stdout())?;

    println!("\nboundary connection (rows: p, columns: a)");
    for &p in values.iter().rev() {
        let line: Vec<String> = table
            .rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.p == p)
            .map(|(i, _)| format!("{:.2}", table.estimate(i, Observable::BoundaryConnection).unwrap().mean))
            .collect();
        println!("p={p:.1}  {}", line.join("  "));
    }
    Ok(())
}
