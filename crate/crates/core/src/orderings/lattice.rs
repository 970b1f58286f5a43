//! Holley and FKG lattice conditions.

use serde::Serialize;

use crate::error::{Error, Result};

use super::BinaryMeasure;

/// Absolute slack allowed in every lattice inequality.
pub const LATTICE_TOL: f64 = 1e-12;

/// A pair (σ₁, σ₂) at which a lattice inequality fails.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub check: String,
    pub sigma1: String,
    pub sigma2: String,
    /// μ₂(σ₁∨σ₂) μ₁(σ₁∧σ₂) (or the FKG analogue).
    pub lhs: f64,
    /// μ₁(σ₁) μ₂(σ₂).
    pub rhs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatticeCheck {
    pub holds: bool,
    pub pairs_checked: usize,
    pub violation: Option<Violation>,
}

impl LatticeCheck {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn require_positive(mu: &BinaryMeasure, name: &str) -> Result<()> {
    if mu.is_strictly_positive() {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} is not strictly positive")))
    }
}

fn same_ground_set(mu1: &BinaryMeasure, mu2: &BinaryMeasure) -> Result<()> {
    if mu1.num_indices() == mu2.num_indices() {
        Ok(())
    } else {
        Err(Error::invalid("measures live on different index sets"))
    }
}

/// Runs `pred(s1, s2)` over pairs and stops at the first failure.
struct Scan<'a> {
    check: &'static str,
    mu1: &'a BinaryMeasure,
    mu2: &'a BinaryMeasure,
    count: usize,
    violation: Option<Violation>,
}

impl<'a> Scan<'a> {
    fn new(check: &'static str, mu1: &'a BinaryMeasure, mu2: &'a BinaryMeasure) -> Self {
        Scan {
            check,
            mu1,
            mu2,
            count: 0,
            violation: None,
        }
    }

    /// Tests μ₂(s1∨s2) μ₁(s1∧s2) ≥ μ₁(s1) μ₂(s2); returns false on failure.
    fn pair(&mut self, s1: usize, s2: usize) -> bool {
        self.count += 1;
        let lhs = self.mu2.prob(s1 | s2) * self.mu1.prob(s1 & s2);
        let rhs = self.mu1.prob(s1) * self.mu2.prob(s2);
        if lhs < rhs - LATTICE_TOL {
            self.violation = Some(Violation {
                check: self.check.to_string(),
                sigma1: self.mu1.label(s1),
                sigma2: self.mu1.label(s2),
                lhs,
                rhs,
            });
            false
        } else {
            true
        }
    }

    fn finish(self) -> LatticeCheck {
        LatticeCheck {
            holds: self.violation.is_none(),
            pairs_checked: self.count,
            violation: self.violation,
        }
    }
}

/// Holley condition μ₂(σ₁∨σ₂)μ₁(σ₁∧σ₂) ≥ μ₁(σ₁)μ₂(σ₂), checked on the pairs
/// (σ^i, σ) and (σ^i, σ^j) with σ_i = σ_j = 0.
pub fn holley_check(mu1: &BinaryMeasure, mu2: &BinaryMeasure) -> Result<LatticeCheck> {
    require_positive(mu1, "μ₁")?;
    require_positive(mu2, "μ₂")?;
    same_ground_set(mu1, mu2)?;
    let n = mu1.num_indices();
    let mut scan = Scan::new("holley", mu1, mu2);
    'outer: for s in 0..1usize << n {
        for i in (0..n).filter(|&i| s >> i & 1 == 0) {
            let si = s | 1 << i;
            if !scan.pair(si, s) {
                break 'outer;
            }
            for j in (0..n).filter(|&j| j != i && s >> j & 1 == 0) {
                if !scan.pair(si, s | 1 << j) {
                    break 'outer;
                }
            }
        }
    }
    Ok(scan.finish())
}

/// Holley condition over all pairs (σ₁, σ₂); for validating the reduced check.
pub fn holley_check_exhaustive(mu1: &BinaryMeasure, mu2: &BinaryMeasure) -> Result<LatticeCheck> {
    require_positive(mu1, "μ₁")?;
    require_positive(mu2, "μ₂")?;
    same_ground_set(mu1, mu2)?;
    let size = 1usize << mu1.num_indices();
    let mut scan = Scan::new("holley_exhaustive", mu1, mu2);
    'outer: for s1 in 0..size {
        for s2 in 0..size {
            if !scan.pair(s1, s2) {
                break 'outer;
            }
        }
    }
    Ok(scan.finish())
}

/// FKG condition μ(σ₁∨σ₂)μ(σ₁∧σ₂) ≥ μ(σ₁)μ(σ₂), checked on the pairs (σ^i, σ^j).
pub fn fkg_check(mu: &BinaryMeasure) -> Result<LatticeCheck> {
    require_positive(mu, "μ")?;
    let n = mu.num_indices();
    let mut scan = Scan::new("fkg", mu, mu);
    'outer: for s in 0..1usize << n {
        for i in (0..n).filter(|&i| s >> i & 1 == 0) {
            for j in (i + 1..n).filter(|&j| s >> j & 1 == 0) {
                if !scan.pair(s | 1 << i, s | 1 << j) {
                    break 'outer;
                }
            }
        }
    }
    Ok(scan.finish())
}

/// FKG condition over all pairs.
pub fn fkg_check_exhaustive(mu: &BinaryMeasure) -> Result<LatticeCheck> {
    require_positive(mu, "μ")?;
    let size = 1usize << mu.num_indices();
    let mut scan = Scan::new("fkg_exhaustive", mu, mu);
    'outer: for s1 in 0..size {
        for s2 in s1 + 1..size {
            if !scan.pair(s1, s2) {
                break 'outer;
            }
        }
    }
    Ok(scan.finish())
}
