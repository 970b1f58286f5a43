//! For q = 1 the spin measure is an Ising model with site-dependent fields.
//!
//! `cargo run --example ising_reduction`

use bcp_drc::exact::{bcp_measure, ising_map, ising_measure};
use bcp_drc::scan::critical_constants;
use bcp_drc::{Graph, ModelParams};

fn main() -> bcp_drc::Result<()> {
    let g = Graph::path(4);
    let degrees: Vec<usize> = (0..g.num_vertices()).map(|x| g.degree(x)).collect();
    for (k, delta) in [(0.4, 0.0), (1.0, 0.8), (2.0, -1.0)] {
        let m = ModelParams::from_bcp(k, delta, 1.0)?;
        let ising = ising_map(&m, &degrees);
        let dev = bcp_measure(&g, k, delta, 1)?.max_abs_diff(&ising_measure(&g, &ising)?);
        println!("K={k} Delta={delta}: J={:.4} h={:?} max deviation {dev:.1e}", ising.j, ising.h);
    }
    let c = critical_constants(2)?;
    let m = ModelParams::from_apq(c.a_bar, c.p_bar, 1.0)?;
    let (j, h) = bcp_drc::exact::ising_map_regular(&m, 2);
    println!(
        "tri-critical point: J = {j:.12} (J_c = {:.12}), h = {h:.1e}",
        0.5 * (1.0 + 2f64.sqrt()).ln()
    );
    Ok(())
}
