//! Exact stochastic domination on {0,1}^I by enumerating up-sets.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};

use super::lattice::LATTICE_TOL;
use super::BinaryMeasure;

/// Largest |I| handled by up-set enumeration.
pub const MAX_DOMINANCE_INDICES: usize = 5;

/// All up-sets of {0,1}^n as truth tables (bit m set iff configuration m is in the set).
///
/// An up-set is a monotone Boolean function f; splitting on the top
/// coordinate gives f = f₀ on the lower half and f₁ on the upper, with f₀ ⊆ f₁.
pub fn upsets(n: usize) -> Result<&'static [u32]> {
    static CACHE: [OnceLock<Vec<u32>>; MAX_DOMINANCE_INDICES + 1] =
        [const { OnceLock::new() }; MAX_DOMINANCE_INDICES + 1];
    if n > MAX_DOMINANCE_INDICES {
        return Err(Error::Capacity {
            what: "indices for up-set enumeration",
            needed: n as u128,
            limit: MAX_DOMINANCE_INDICES as u128,
        });
    }
    Ok(CACHE[n].get_or_init(|| {
        if n == 0 {
            return vec![0, 1];
        }
        let lower = upsets(n - 1).expect("smaller n is in range");
        let shift = 1u32 << (n - 1);
        let mut out = Vec::new();
        for &f0 in lower {
            for &f1 in lower {
                if f0 & !f1 == 0 {
                    out.push(f0 | (f1 << shift));
                }
            }
        }
        out
    }))
}

/// An up-set U with μ₁(U) > μ₂(U).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DominanceViolation {
    /// Minimal elements of U.
    pub minimal: Vec<String>,
    pub mu1: f64,
    pub mu2: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DominanceReport {
    pub holds: bool,
    pub upsets_checked: usize,
    /// max_U μ₁(U) − μ₂(U).
    pub worst_gap: f64,
    pub violation: Option<DominanceViolation>,
}

fn minimal_elements(table: u32, n: usize) -> Vec<usize> {
    (0..1usize << n)
        .filter(|&m| table >> m & 1 == 1)
        .filter(|&m| (0..n).all(|i| m >> i & 1 == 0 || table >> (m & !(1 << i)) & 1 == 0))
        .collect()
}

/// μ₁ ≤st μ₂ with the worst up-set reported.
pub fn dominance_report(mu1: &BinaryMeasure, mu2: &BinaryMeasure) -> Result<DominanceReport> {
    let n = mu1.num_indices();
    if mu2.num_indices() != n {
        return Err(Error::invalid("measures live on different index sets"));
    }
    let sets = upsets(n)?;
    let mut worst = f64::NEG_INFINITY;
    let mut worst_set = 0u32;
    for &u in sets {
        let gap = mu1.set_prob(u) - mu2.set_prob(u);
        if gap > worst {
            worst = gap;
            worst_set = u;
        }
    }
    let holds = worst <= LATTICE_TOL;
    Ok(DominanceReport {
        holds,
        upsets_checked: sets.len(),
        worst_gap: worst,
        violation: (!holds).then(|| DominanceViolation {
            minimal: minimal_elements(worst_set, n)
                .into_iter()
                .map(|m| mu1.label(m))
                .collect(),
            mu1: mu1.set_prob(worst_set),
            mu2: mu2.set_prob(worst_set),
        }),
    })
}

/// μ₁ ≤st μ₂: μ₁(U) ≤ μ₂(U) + 1e-12 for every up-set U.
pub fn dominance_exact(mu1: &BinaryMeasure, mu2: &BinaryMeasure) -> Result<bool> {
    Ok(dominance_report(mu1, mu2)?.holds)
}

/// μ(A ∩ B) ≥ μ(A)μ(B) − 1e-12 for all up-sets A, B.
pub fn positively_associated(mu: &BinaryMeasure) -> Result<bool> {
    let sets = upsets(mu.num_indices())?;
    let probs: Vec<f64> = sets.iter().map(|&u| mu.set_prob(u)).collect();
    for (i, &a) in sets.iter().enumerate() {
        for (j, &b) in sets.iter().enumerate().skip(i) {
            if mu.set_prob(a & b) < probs[i] * probs[j] - LATTICE_TOL {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedekind_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| upsets(n).unwrap().len()).collect();
        assert_eq!(counts, vec![2, 3, 6, 20, 168, 7581]);
        assert!(upsets(6).is_err());
    }

    #[test]
    fn upsets_are_closed_upward() {
        let n = 3;
        for &u in upsets(n).unwrap() {
            for m in 0..8usize {
                if u >> m & 1 == 1 {
                    for i in 0..n {
                        assert_eq!(u >> (m | 1 << i) & 1, 1);
                    }
                }
            }
        }
    }

    #[test]
    fn bernoulli_examples() {
        let lo = BinaryMeasure::product(&[0.3; 3]).unwrap();
        let hi = BinaryMeasure::product(&[0.6; 3]).unwrap();
        assert!(dominance_exact(&lo, &lo).unwrap());
        assert!(dominance_exact(&lo, &hi).unwrap());
        let a = BinaryMeasure::product(&[0.6]).unwrap();
        let b = BinaryMeasure::product(&[0.3]).unwrap();
        let report = dominance_report(&a, &b).unwrap();
        assert!(!report.holds);
        assert_eq!(report.violation.unwrap().minimal, vec!["1".to_string()]);
    }

    #[test]
    fn product_measures_are_associated() {
        assert!(positively_associated(&BinaryMeasure::product(&[0.2, 0.5, 0.9]).unwrap()).unwrap());
        let anti = BinaryMeasure::new(2, vec![0.1, 0.4, 0.4, 0.1]).unwrap();
        assert!(!positively_associated(&anti).unwrap());
    }
}
