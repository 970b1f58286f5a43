//! Exact BCP and DRC tables on a single edge.
//!
//! `cargo run --example exact_k2`

use bcp_drc::exact::{bcp_measure, drc_measure, edge_marginal, vertex_marginal};
use bcp_drc::{Graph, ModelParams};

fn main() -> bcp_drc::Result<()> {
    let g = Graph::complete(2);
    let m = ModelParams::from_apq(0.5, 0.5, 2.0)?;
    println!("{:?}", m.summary());

    let drc = drc_measure(&g, &m)?;
    println!("Z_DRC = {:.12} (5 + 3 sqrt 2 = {:.12})", drc.total(), 5.0 + 3.0 * 2f64.sqrt());
    drc.write_csv(std::io::stdout())?;

    println!("\nvertex marginal");
    vertex_marginal(&drc).write_csv(std::io::stdout())?;
    println!("\nedge marginal");
    edge_marginal(&drc).write_csv(std::io::stdout())?;

    let bcp = bcp_measure(&g, m.k(), m.delta(), 2)?;
    println!("\nspin table, Z_BCP = {:.12}", bcp.total());
    bcp.write_csv(std::io::stdout())?;
    Ok(())
}
