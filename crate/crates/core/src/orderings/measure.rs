//! Probability measures on {0,1}^I stored as dense tables.

use rand::Rng;
use serde::Serialize;

use crate::config::BitConfig;
use crate::dist::FiniteDistribution;
use crate::error::{Error, Result};

/// Largest ground set accepted by the dense representation.
pub const MAX_BINARY_INDICES: usize = 20;

/// A probability measure on {0,1}^I; entry `m` is the mass of the
/// configuration whose bit i is coordinate i.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BinaryMeasure {
    n: usize,
    probs: Vec<f64>,
}

impl BinaryMeasure {
    /// Normalizes nonnegative weights indexed by bitmask.
    pub fn from_weights(n: usize, weights: Vec<f64>) -> Result<Self> {
        if n > MAX_BINARY_INDICES {
            return Err(Error::Capacity {
                what: "binary measure indices",
                needed: n as u128,
                limit: MAX_BINARY_INDICES as u128,
            });
        }
        if weights.len() != 1 << n {
            return Err(Error::invalid(format!(
                "expected {} weights for {n} indices, got {}",
                1usize << n,
                weights.len()
            )));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::invalid("weights must be finite and nonnegative"));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::invalid("weights sum to zero"));
        }
        Ok(BinaryMeasure {
            n,
            probs: weights.into_iter().map(|w| w / total).collect(),
        })
    }

    /// From probabilities that already sum to 1 within 1e-12.
    pub fn new(n: usize, probs: Vec<f64>) -> Result<Self> {
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(format!("probabilities sum to {total}, not 1")));
        }
        Self::from_weights(n, probs)
    }

    /// Dense copy of a table over bit configurations of a common length.
    pub fn from_distribution(dist: &FiniteDistribution<BitConfig>) -> Result<Self> {
        let n = dist
            .support()
            .next()
            .map(BitConfig::len)
            .ok_or_else(|| Error::invalid("empty distribution"))?;
        if n > MAX_BINARY_INDICES {
            return Err(Error::Capacity {
                what: "binary measure indices",
                needed: n as u128,
                limit: MAX_BINARY_INDICES as u128,
            });
        }
        let mut probs = vec![0.0; 1 << n];
        for (c, p) in dist.iter() {
            if c.len() != n {
                return Err(Error::invalid("configurations of different lengths"));
            }
            probs[c.mask() as usize] = p;
        }
        Ok(BinaryMeasure { n, probs })
    }

    /// Product of Bernoulli(p_i).
    pub fn product(ps: &[f64]) -> Result<Self> {
        let n = ps.len();
        if ps.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::invalid("Bernoulli parameters must lie in [0,1]"));
        }
        let weights = (0..1usize << n)
            .map(|m| {
                ps.iter()
                    .enumerate()
                    .map(|(i, &p)| if m >> i & 1 == 1 { p } else { 1.0 - p })
                    .product()
            })
            .collect();
        Self::from_weights(n, weights)
    }

    /// Weights drawn log-uniform in [e^{−3}, e^{3}], then normalized.
    pub fn random_log_uniform<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let weights = (0..1usize << n).map(|_| rng.gen_range(-3.0..=3.0f64).exp()).collect();
        Self::from_weights(n, weights).expect("positive weights")
    }

    /// |I|.
    pub fn num_indices(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn prob(&self, mask: usize) -> f64 {
        self.probs[mask]
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.probs.iter().all(|&p| p > 0.0)
    }

    /// μ(U) for an up-set given as a truth table over bitmasks.
    pub fn set_prob(&self, table: u32) -> f64 {
        let mut s = 0.0;
        let mut t = table;
        while t != 0 {
            let m = t.trailing_zeros() as usize;
            s += self.probs[m];
            t &= t - 1;
        }
        s
    }

    /// Marginal on the coordinates `keep`, in that order.
    pub fn marginal(&self, keep: &[usize]) -> Result<Self> {
        if keep.iter().any(|&i| i >= self.n) {
            return Err(Error::invalid("marginal coordinate out of range"));
        }
        let mut w = vec![0.0; 1 << keep.len()];
        for (m, &p) in self.probs.iter().enumerate() {
            let idx = keep
                .iter()
                .enumerate()
                .fold(0usize, |acc, (j, &i)| acc | ((m >> i & 1) << j));
            w[idx] += p;
        }
        Self::from_weights(keep.len(), w)
    }

    pub(crate) fn label(&self, mask: usize) -> String {
        BitConfig::new(mask as u64, self.n).label()
    }
}
