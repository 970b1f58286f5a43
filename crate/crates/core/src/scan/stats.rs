//! Batch-means error bars and two-point estimates from observable series.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampler::ObservableSeries;

use super::Observable;

pub const DEFAULT_BATCHES: usize = 32;

/// A mean with its batch-means standard error. `stderr` is NaN when fewer
/// than two batches are available.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: usize,
}

impl Estimate {
    pub fn has_error_bar(&self) -> bool {
        self.stderr.is_finite()
    }

    pub fn scale(&self, c: f64) -> Estimate {
        Estimate {
            mean: c * self.mean,
            stderr: c.abs() * self.stderr,
            samples: self.samples,
        }
    }

    /// |self − other| in units of the combined standard error.
    pub fn z_score(&self, other: &Estimate) -> f64 {
        (self.mean - other.mean).abs() / self.stderr.hypot(other.stderr)
    }
}

/// Mean of `xs` with a standard error from `batches` equal consecutive blocks
/// (fewer if there are fewer samples; trailing samples beyond a whole block
/// count toward the mean only).
pub fn batch_means(xs: &[f64], batches: usize) -> Estimate {
    let n = xs.len();
    let mean = if n == 0 { f64::NAN } else { xs.iter().sum::<f64>() / n as f64 };
    let b = batches.min(n);
    let stderr = if b < 2 {
        f64::NAN
    } else {
        let size = n / b;
        let means: Vec<f64> = xs[..b * size]
            .chunks(size)
            .map(|c| c.iter().sum::<f64>() / size as f64)
            .collect();
        let m = means.iter().sum::<f64>() / b as f64;
        let var = means.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (b - 1) as f64;
        (var / b as f64).sqrt()
    };
    Estimate {
        mean,
        stderr,
        samples: n,
    }
}

/// Estimates of every column of a series.
pub fn summarize(series: &ObservableSeries, batches: usize) -> Vec<Estimate> {
    (0..series.names.len())
        .map(|j| batch_means(&series.column(j), batches))
        .collect()
}

/// Two estimates of τ_q(0, t) from one chain.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TauEstimate {
    /// From spin statistics.
    pub spin: Estimate,
    /// (1 − 1/q) times the connection frequency.
    pub connectivity: Estimate,
    /// Paired difference spin − connectivity.
    pub difference: Estimate,
}

/// τ̂ both ways; the series must contain `tau_spin` and `target_connection`.
pub fn tau_estimate(series: &ObservableSeries, q: u8) -> Result<TauEstimate> {
    if q == 0 {
        return Err(Error::domain("q must be at least 1"));
    }
    let col = |o: Observable| {
        series
            .column_by(o)
            .ok_or_else(|| Error::invalid(format!("series has no '{}' column", o.name())))
    };
    let spin = col(Observable::TauSpin)?;
    let factor = 1.0 - 1.0 / q as f64;
    let conn: Vec<f64> = col(Observable::TargetConnection)?.iter().map(|c| factor * c).collect();
    let diff: Vec<f64> = spin.iter().zip(&conn).map(|(s, c)| s - c).collect();
    Ok(TauEstimate {
        spin: batch_means(&spin, DEFAULT_BATCHES),
        connectivity: batch_means(&conn, DEFAULT_BATCHES),
        difference: batch_means(&diff, DEFAULT_BATCHES),
    })
}
