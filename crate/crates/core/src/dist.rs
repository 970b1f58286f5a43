//! Explicit probability tables over small configuration spaces.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use crate::config::Labeled;
use crate::error::{Error, Result};

/// ln Σ exp(x_i), ignoring −∞ terms. Returns −∞ for an empty sum.
pub fn log_sum_exp<I: IntoIterator<Item = f64>>(xs: I) -> f64 {
    let xs: Vec<f64> = xs.into_iter().filter(|x| *x > f64::NEG_INFINITY).collect();
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// A finite measure stored as log-weights, sorted by configuration.
///
/// Zero-weight configurations are dropped, so the support is exactly the set
/// of configurations with positive mass.
#[derive(Clone, Debug)]
pub struct FiniteDistribution<C> {
    entries: Vec<(C, f64)>,
    log_total: f64,
}

impl<C: Ord + Clone> FiniteDistribution<C> {
    /// Builds a table from `(configuration, ln weight)` pairs. Repeated
    /// configurations have their weights added.
    pub fn from_log_weights<I: IntoIterator<Item = (C, f64)>>(items: I) -> Result<Self> {
        let mut merged: BTreeMap<C, Vec<f64>> = BTreeMap::new();
        for (c, lw) in items {
            if lw.is_nan() || lw == f64::INFINITY {
                return Err(Error::invalid(format!("log-weight {lw} is not a finite weight")));
            }
            if lw > f64::NEG_INFINITY {
                merged.entry(c).or_default().push(lw);
            }
        }
        let entries: Vec<(C, f64)> = merged
            .into_iter()
            .map(|(c, ws)| (c, if ws.len() == 1 { ws[0] } else { log_sum_exp(ws) }))
            .collect();
        if entries.is_empty() {
            return Err(Error::invalid("distribution has no positive weight"));
        }
        let log_total = log_sum_exp(entries.iter().map(|e| e.1));
        Ok(FiniteDistribution { entries, log_total })
    }

    pub fn from_weights<I: IntoIterator<Item = (C, f64)>>(items: I) -> Result<Self> {
        let mut logs = Vec::new();
        for (c, w) in items {
            if !(w >= 0.0) || !w.is_finite() {
                return Err(Error::invalid(format!("weight {w} is not a finite nonnegative number")));
            }
            logs.push((c, w.ln()));
        }
        Self::from_log_weights(logs)
    }

    /// Number of configurations with positive mass.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// ln of the normalizing constant (sum of unnormalized weights).
    pub fn log_total(&self) -> f64 {
        self.log_total
    }

    pub fn total(&self) -> f64 {
        self.log_total.exp()
    }

    pub fn support(&self) -> impl Iterator<Item = &C> {
        self.entries.iter().map(|e| &e.0)
    }

    fn find(&self, c: &C) -> Option<usize> {
        self.entries.binary_search_by(|e| e.0.cmp(c)).ok()
    }

    /// Unnormalized weight; 0 off the support.
    pub fn weight(&self, c: &C) -> f64 {
        self.find(c).map_or(0.0, |i| self.entries[i].1.exp())
    }

    pub fn log_weight(&self, c: &C) -> f64 {
        self.find(c).map_or(f64::NEG_INFINITY, |i| self.entries[i].1)
    }

    pub fn prob(&self, c: &C) -> f64 {
        self.find(c)
            .map_or(0.0, |i| (self.entries[i].1 - self.log_total).exp())
    }

    /// `(configuration, probability)` in configuration order.
    pub fn iter(&self) -> impl Iterator<Item = (&C, f64)> + '_ {
        self.entries
            .iter()
            .map(move |(c, lw)| (c, (lw - self.log_total).exp()))
    }

    pub fn expect<F: Fn(&C) -> f64>(&self, f: F) -> f64 {
        self.iter().map(|(c, p)| p * f(c)).sum()
    }

    pub fn prob_where<F: Fn(&C) -> bool>(&self, pred: F) -> f64 {
        self.iter().filter(|(c, _)| pred(c)).map(|(_, p)| p).sum()
    }

    /// Push-forward under `f`, keeping unnormalized weights (so the total is preserved).
    pub fn map_marginal<D: Ord + Clone, F: Fn(&C) -> D>(&self, f: F) -> FiniteDistribution<D> {
        let mut groups: BTreeMap<D, Vec<f64>> = BTreeMap::new();
        for (c, lw) in &self.entries {
            groups.entry(f(c)).or_default().push(*lw);
        }
        let entries: Vec<(D, f64)> = groups
            .into_iter()
            .map(|(d, ws)| (d, log_sum_exp(ws)))
            .collect();
        FiniteDistribution {
            entries,
            log_total: self.log_total,
        }
    }

    /// Conditional table given `pred`; errors if the event has probability 0.
    pub fn condition<F: Fn(&C) -> bool>(&self, pred: F) -> Result<Self> {
        Self::from_log_weights(
            self.entries
                .iter()
                .filter(|(c, _)| pred(c))
                .map(|(c, lw)| (c.clone(), *lw)),
        )
    }

    /// max_c |P(c) − Q(c)| over the union of supports.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for (c, p) in self.iter() {
            worst = worst.max((p - other.prob(c)).abs());
        }
        for (c, p) in other.iter() {
            if self.find(c).is_none() {
                worst = worst.max(p);
            }
        }
        worst
    }

    /// Total-variation distance ½ Σ |P(c) − Q(c)|.
    pub fn total_variation(&self, other: &Self) -> f64 {
        let mut sum = 0.0;
        for (c, p) in self.iter() {
            sum += (p - other.prob(c)).abs();
        }
        for (c, p) in other.iter() {
            if self.find(c).is_none() {
                sum += p;
            }
        }
        0.5 * sum
    }
}

#[derive(Serialize)]
struct JsonRow {
    config: Vec<String>,
    weight: f64,
    probability: f64,
}

#[derive(Serialize)]
struct JsonTable<'a> {
    columns: Vec<&'a str>,
    log_total: f64,
    rows: Vec<JsonRow>,
}

impl<C: Ord + Clone + Labeled> FiniteDistribution<C> {
    /// CSV with the configuration label columns, then `weight` and `probability`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<&str> = C::columns();
        header.extend(["weight", "probability"]);
        w.write_record(&header)?;
        for (c, lw) in &self.entries {
            let mut row = c.labels();
            row.push(format!("{:.16e}", lw.exp()));
            row.push(format!("{:.16e}", (lw - self.log_total).exp()));
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let table = JsonTable {
            columns: C::columns(),
            log_total: self.log_total,
            rows: self
                .entries
                .iter()
                .map(|(c, lw)| JsonRow {
                    config: c.labels(),
                    weight: lw.exp(),
                    probability: (lw - self.log_total).exp(),
                })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&table)?)
    }
}
