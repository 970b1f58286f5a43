//! Square-lattice constants and the comparison regions a few (a, p) points fall in.
//!
//! `cargo run --example constants`

use bcp_drc::scan::{critical_constants, h_zero_arc, region_predicates};

fn main() -> bcp_drc::Result<()> {
    let c = critical_constants(2)?;
    for (name, value, rounded) in c.table() {
        println!("{name:>14} = {value:.12}  ({rounded})");
    }
    println!("\nzero-field arc through the tri-critical point: a(p_bar) = {:.12}", h_zero_arc(c.p_bar, 2)?);
    for (a, p) in [(0.05, 0.99), (0.9, 0.99), (0.5, 0.2), (0.1, 0.5)] {
        println!("({a}, {p}): {:?}", region_predicates(a, p)?);
    }
    Ok(())
}
