//! (a, p) grid scans and hysteresis runs on boxes of ℤ^d.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_box, Region, SpinBoundary};
use crate::params::ModelParams;
use crate::sampler::{continue_chain, InitialState, RunSettings, Sampler, SamplerParams, Schedule};

use super::stats::{summarize, Estimate, DEFAULT_BATCHES};
use super::Observable;

pub const DEFAULT_RADIUS: i64 = 16;

/// Boundary of the scanned box.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanBoundary {
    /// Closed boundary vertices (free spins).
    Zero,
    /// Open, wired boundary vertices (boundary spin 1).
    #[default]
    One,
    /// The torus, no boundary.
    Periodic,
}

impl ScanBoundary {
    pub fn name(&self) -> &'static str {
        match self {
            ScanBoundary::Zero => "zero",
            ScanBoundary::One => "one",
            ScanBoundary::Periodic => "periodic",
        }
    }

    pub fn region(&self, d: usize, n: i64) -> Result<Region> {
        match self {
            ScanBoundary::Periodic => Region::periodic_box(d, n),
            _ => build_box(d, n),
        }
    }

    pub fn spin_boundary(&self) -> SpinBoundary {
        match self {
            ScanBoundary::One => SpinBoundary::Fixed(1),
            _ => SpinBoundary::Free,
        }
    }
}

/// A set of (a, p) points sharing q, box and chain settings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanGrid {
    points: Vec<(f64, f64)>,
    pub q: u8,
    pub dim: usize,
    pub radius: i64,
    pub boundary: ScanBoundary,
    pub sweeps: u64,
    pub burn_in: u64,
    pub thin: u64,
    /// Point i runs with this seed on stream i.
    pub seed: u64,
    pub schedule: Schedule,
    pub init: InitialState,
    pub observables: Vec<Observable>,
}

impl ScanGrid {
    /// Points are validated in (0,1) × [0,1) and sorted lexicographically.
    /// p = 0 is the product-measure case.
    pub fn new(mut points: Vec<(f64, f64)>, q: u8) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::invalid("scan grid has no points"));
        }
        for &(a, p) in &points {
            if !(a > 0.0 && a < 1.0 && (0.0..1.0).contains(&p)) {
                return Err(Error::domain(format!("grid point ({a}, {p}) is not in (0,1) x [0,1)")));
            }
        }
        if q == 0 {
            return Err(Error::domain("scans need an integer q >= 1"));
        }
        points.sort_by(|x, y| x.partial_cmp(y).expect("finite points"));
        points.dedup();
        Ok(ScanGrid {
            points,
            q,
            dim: 2,
            radius: DEFAULT_RADIUS,
            boundary: ScanBoundary::One,
            sweeps: 2000,
            burn_in: 500,
            thin: 1,
            seed: 0,
            schedule: Schedule::Raster,
            init: InitialState::Random,
            observables: Observable::ALL.to_vec(),
        })
    }

    /// The product grid a_values × p_values.
    pub fn product(a_values: &[f64], p_values: &[f64], q: u8) -> Result<Self> {
        let points = a_values
            .iter()
            .flat_map(|&a| p_values.iter().map(move |&p| (a, p)))
            .collect();
        Self::new(points, q)
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    fn settings(&self, stream: u64) -> RunSettings {
        RunSettings {
            sweeps: self.sweeps,
            burn_in: self.burn_in,
            thin: self.thin,
            seed: self.seed,
            stream,
            schedule: self.schedule,
            init: self.init,
        }
    }
}

/// Estimates at one grid point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub a: f64,
    pub p: f64,
    pub estimates: Vec<Estimate>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanTable {
    pub q: u8,
    pub radius: i64,
    pub boundary: ScanBoundary,
    pub observables: Vec<String>,
    pub rows: Vec<ScanRow>,
}

fn point_params(a: f64, p: f64, q: u8) -> Result<SamplerParams> {
    SamplerParams::from_model(&ModelParams::from_apq(a, p, q as f64)?)
}

/// Run every grid point, at most `jobs` at a time (all cores if `None`).
/// Rows come back in grid order.
pub fn scan(grid: &ScanGrid, jobs: Option<usize>) -> Result<ScanTable> {
    grid.settings(0).validate()?;
    let region = grid.boundary.region(grid.dim, grid.radius)?;
    let boundary = grid.boundary.spin_boundary();
    let run = |(i, &(a, p)): (usize, &(f64, f64))| -> Result<ScanRow> {
        let settings = grid.settings(i as u64);
        let mut sampler = Sampler::new(region.clone(), boundary, point_params(a, p, grid.q)?, grid.schedule)?;
        let mut state = sampler.initial_state(grid.init, settings.seed, settings.stream)?;
        let series = continue_chain(&mut sampler, &mut state, &settings, &grid.observables)?;
        Ok(ScanRow {
            a,
            p,
            estimates: summarize(&series, DEFAULT_BATCHES),
        })
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?;
    let rows = pool.install(|| grid.points.par_iter().enumerate().map(run).collect::<Result<Vec<_>>>())?;
    Ok(ScanTable {
        q: grid.q,
        radius: grid.radius,
        boundary: grid.boundary,
        observables: grid.observables.iter().map(|o| o.name().to_string()).collect(),
        rows,
    })
}

/// Direction of a hysteresis run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sweep {
    Ascending,
    Descending,
}

/// One chain carried through the a-values at fixed p in the given direction;
/// each point gets `grid.sweeps` sweeps of which the first `grid.burn_in`
/// are discarded. Rows are in the order visited. The grid's points are ignored.
pub fn hysteresis(grid: &ScanGrid, p: f64, a_values: &[f64], direction: Sweep) -> Result<ScanTable> {
    grid.settings(0).validate()?;
    if a_values.is_empty() {
        return Err(Error::invalid("hysteresis run has no a-values"));
    }
    let mut a_sorted = a_values.to_vec();
    a_sorted.sort_by(|x, y| x.partial_cmp(y).expect("finite a"));
    if direction == Sweep::Descending {
        a_sorted.reverse();
    }
    let region = grid.boundary.region(grid.dim, grid.radius)?;
    let boundary = grid.boundary.spin_boundary();
    let settings = grid.settings(0);
    let mut state = None;
    let mut rows = Vec::new();
    for &a in &a_sorted {
        let mut sampler = Sampler::new(region.clone(), boundary, point_params(a, p, grid.q)?, grid.schedule)?;
        let mut st = match state.take() {
            Some(s) => s,
            None => sampler.initial_state(grid.init, settings.seed, settings.stream)?,
        };
        st.sweep = 0;
        let series = continue_chain(&mut sampler, &mut st, &settings, &grid.observables)?;
        rows.push(ScanRow {
            a,
            p,
            estimates: summarize(&series, DEFAULT_BATCHES),
        });
        state = Some(st);
    }
    Ok(ScanTable {
        q: grid.q,
        radius: grid.radius,
        boundary: grid.boundary,
        observables: grid.observables.iter().map(|o| o.name().to_string()).collect(),
        rows,
    })
}

impl ScanTable {
    pub fn column_index(&self, obs: Observable) -> Option<usize> {
        self.observables.iter().position(|n| n == obs.name())
    }

    pub fn estimate(&self, row: usize, obs: Observable) -> Option<Estimate> {
        self.column_index(obs).map(|j| self.rows[row].estimates[j])
    }

    /// CSV: a, p, q, n, boundary, samples, one column per observable, then one
    /// `<name>_stderr` column per observable. Undefined error bars print as NaN.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<String> = ["a", "p", "q", "n", "boundary", "samples"].map(String::from).to_vec();
        header.extend(self.observables.iter().cloned());
        header.extend(self.observables.iter().map(|n| format!("{n}_stderr")));
        w.write_record(&header)?;
        for row in &self.rows {
            let mut rec = vec![
                format!("{:.16e}", row.a),
                format!("{:.16e}", row.p),
                self.q.to_string(),
                self.radius.to_string(),
                self.boundary.name().to_string(),
                row.estimates.first().map_or(0, |e| e.samples).to_string(),
            ];
            rec.extend(row.estimates.iter().map(|e| format!("{:.16e}", e.mean)));
            rec.extend(row.estimates.iter().map(|e| format!("{:.16e}", e.stderr)));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// gnuplot `nonuniform matrix` of one observable's means: the first line
    /// lists the a-values, each further line is p followed by the values.
    pub fn write_gnuplot_matrix<W: Write>(&self, mut out: W, obs: Observable) -> Result<()> {
        let j = self
            .column_index(obs)
            .ok_or_else(|| Error::invalid(format!("table has no '{}' column", obs.name())))?;
        let mut a_vals: Vec<f64> = self.rows.iter().map(|r| r.a).collect();
        let mut p_vals: Vec<f64> = self.rows.iter().map(|r| r.p).collect();
        for v in [&mut a_vals, &mut p_vals] {
            v.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
            v.dedup();
        }
        write!(out, "{}", a_vals.len())?;
        for a in &a_vals {
            write!(out, " {a:.16e}")?;
        }
        writeln!(out)?;
        for &p in &p_vals {
            write!(out, "{p:.16e}")?;
            for &a in &a_vals {
                let v = self
                    .rows
                    .iter()
                    .find(|r| r.a == a && r.p == p)
                    .map_or(f64::NAN, |r| r.estimates[j].mean);
                write!(out, " {v:.16e}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}
