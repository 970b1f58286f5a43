//! On a single edge, conditioning the far vertex on an open neighbour (with the
//! edge closed) lowers its open probability: the DRC measure is not monotone.
//!
//! `cargo run --example nonmonotonicity`

use bcp_drc::orderings::nonmonotonicity_witness;

fn main() -> bcp_drc::Result<()> {
    println!("{:>4} {:>4} {:>4} {:>10} {:>10} {:>7}", "a", "p", "q", "x closed", "x open", "strict");
    for (a, p, q) in [(0.5, 0.5, 2.0), (0.2, 0.9, 1.0), (0.8, 0.1, 3.0), (0.5, 0.99, 4.0)] {
        let w = nonmonotonicity_witness(a, p, q)?;
        let r = (1.0 - p).sqrt();
        println!(
            "{a:>4} {p:>4} {q:>4} {:>10.6} {:>10.6} {:>7}   closed forms {:.6} {:.6}",
            w.value_closed,
            w.value_open,
            w.strict,
            q * a / (q * a + 1.0 - a),
            q * a * r / (q * a * r + 1.0 - a)
        );
    }
    Ok(())
}
