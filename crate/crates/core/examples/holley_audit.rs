//! Random strictly positive pairs on {0,1}^4: how often the Holley condition
//! holds, and that dominance follows whenever it does.
//!
//! `cargo run --example holley_audit -- 500`

use bcp_drc::orderings::{dominance_exact, holley_check, holley_check_exhaustive, BinaryMeasure};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// exp of a pair interaction with nonnegative couplings on {0,1}^4.
fn random_fkg(rng: &mut ChaCha8Rng) -> BinaryMeasure {
    let h: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let j: Vec<f64> = (0..16).map(|_| rng.gen_range(0.0..0.7)).collect();
    let w = (0..16usize)
        .map(|x| {
            let on = |i: usize| x >> i & 1 == 1;
            let e: f64 = (0..4)
                .filter(|&i| on(i))
                .map(|i| h[i] + (i + 1..4).filter(|&k| on(k)).map(|k| j[4 * i + k]).sum::<f64>())
                .sum();
            e.exp()
        })
        .collect();
    BinaryMeasure::from_weights(4, w).expect("positive weights")
}

fn main() -> bcp_drc::Result<()> {
    let pairs: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(500);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut holley, mut dominated, mut reduced_mismatch) = (0, 0, 0);
    for _ in 0..pairs {
        let mu1 = random_fkg(&mut rng);
        // A noisy upward tilt: usually Holley, sometimes not.
        let w: Vec<f64> = (0..16usize)
            .map(|x| mu1.prob(x) * (0.3 * x.count_ones() as f64 + rng.gen_range(-0.05..0.05)).exp())
            .collect();
        let mu2 = BinaryMeasure::from_weights(4, w)?;
        let full = holley_check_exhaustive(&mu1, &mu2)?;
        if holley_check(&mu1, &mu2)?.holds != full.holds {
            reduced_mismatch += 1;
        }
        let dom = dominance_exact(&mu1, &mu2)?;
        dominated += dom as usize;
        if full.holds {
            holley += 1;
            assert!(dom, "Holley pair that is not ordered");
        }
    }
    println!("{pairs} pairs: {holley} satisfy Holley, {dominated} are ordered, reduced/full disagreements {reduced_mismatch}");
    Ok(())
}
