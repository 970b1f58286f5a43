//! The five subcommands. Each writes its files into the output directory and
//! returns a short human-readable summary.

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{BitConfig, Labeled};
use crate::dist::FiniteDistribution;
use crate::error::{Error, Result};
use crate::exact::{
    bcp_measure_with_boundary, connection_probability, coupling_measure_with_boundary, drc_measure_with_boundary,
    edge_marginal, spin_marginal, theta_marginal, two_point_from_spins, vertex_marginal, vertex_measure, Target,
};
use crate::graph::{BoundaryCondition, Region};
use crate::orderings::{
    dominance_report, holley_check, holley_check_exhaustive, thm54_condition, thm61_condition, thm62_condition,
    BinaryMeasure, DominanceReport, Thm54, Thm61,
};
use crate::params::{ModelParams, ParamSummary};
use crate::sampler::{continue_chain, ChainState, ObservableSeries, RunSettings, Sampler, SamplerParams};
use crate::scan::{critical_constants, hysteresis, scan, summarize, ScanGrid, ScanTable, Sweep, DEFAULT_BATCHES};

use super::config::{BoundarySpec, DominanceCheck, Format, RunConfig};

/// Where and how results are written.
#[derive(Clone, Debug)]
pub struct Output {
    pub dir: PathBuf,
    pub format: Format,
    pub written: Vec<PathBuf>,
}

impl Output {
    pub fn new(dir: PathBuf, format: Format) -> Result<Self> {
        std::fs::create_dir_all(&dir)?;
        Ok(Output {
            dir,
            format,
            written: Vec::new(),
        })
    }

    fn create(&mut self, name: &str) -> Result<BufWriter<File>> {
        let path = self.dir.join(name);
        let f = File::create(&path)?;
        self.written.push(path);
        Ok(BufWriter::new(f))
    }

    fn ext(&self) -> &'static str {
        match self.format {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }

    fn table<C: Ord + Clone + Labeled>(&mut self, stem: &str, dist: &FiniteDistribution<C>) -> Result<()> {
        let name = format!("{stem}.{}", self.ext());
        match self.format {
            Format::Csv => dist.write_csv(self.create(&name)?),
            Format::Json => {
                let text = dist.to_json()?;
                std::io::Write::write_all(&mut self.create(&name)?, text.as_bytes())?;
                Ok(())
            }
        }
    }

    fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let text = serde_json::to_string_pretty(value)?;
        std::io::Write::write_all(&mut self.create(name)?, text.as_bytes())?;
        Ok(())
    }

    /// Rows of plain records, as CSV or as a JSON array.
    fn records<T: Serialize>(&mut self, stem: &str, rows: &[T]) -> Result<()> {
        let name = format!("{stem}.{}", self.ext());
        match self.format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(self.create(&name)?);
                for r in rows {
                    w.serialize(r)?;
                }
                w.flush()?;
                Ok(())
            }
            Format::Json => self.json(&name, &rows),
        }
    }

    fn scan_table(&mut self, stem: &str, table: &ScanTable) -> Result<()> {
        let name = format!("{stem}.{}", self.ext());
        match self.format {
            Format::Csv => table.write_csv(self.create(&name)?),
            Format::Json => {
                let text = table.to_json()?;
                std::io::Write::write_all(&mut self.create(&name)?, text.as_bytes())?;
                Ok(())
            }
        }
    }
}

/// Six significant digits for terminal summaries.
pub fn human(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..6).contains(&mag) {
        format!("{:.*}", (5 - mag).max(0) as usize, x)
    } else {
        format!("{x:.5e}")
    }
}

/// Machine form with 17 significant digits.
fn machine(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Serialize)]
struct RegionSummary {
    interior_vertices: usize,
    boundary_vertices: usize,
    edges: usize,
    boundary: BoundarySpec,
}

#[derive(Serialize)]
struct ExactReport {
    params: ParamSummary,
    region: RegionSummary,
    log_z_drc: f64,
    z_drc: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    log_z_bcp: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    z_bcp: Option<f64>,
    /// |ln Z^BCP − ln(Z^DRC e^{|V|Δ} / q^{[ONE]})|.
    #[serde(skip_serializing_if = "Option::is_none")]
    partition_identity_error: Option<f64>,
    /// Largest deviation between a coupling marginal and the directly computed table.
    #[serde(skip_serializing_if = "Option::is_none")]
    coupling_max_deviation: Option<f64>,
    notes: Vec<String>,
}

#[derive(Serialize)]
struct CorrelationRow {
    x: usize,
    target: String,
    tau: String,
    connectivity: String,
    scaled_connectivity: String,
    difference: String,
}

fn region_summary(region: &Region, cfg: &RunConfig) -> RegionSummary {
    RegionSummary {
        interior_vertices: region.interior_len(),
        boundary_vertices: region.boundary_len(),
        edges: region.graph().num_edges(),
        boundary: cfg.region.boundary,
    }
}

/// Exact BCP, DRC and marginal tables, the partition identity, the coupling
/// check and the correlation table.
pub fn cmd_exact(cfg: &RunConfig, out: &mut Output) -> Result<String> {
    let params = cfg.model.resolve()?;
    let region = cfg.region.build()?;
    let bc = cfg.region.drc_boundary();
    let spin_bc = cfg.region.spin_boundary();
    let mut notes = Vec::new();

    let drc = drc_measure_with_boundary(&region, &bc, &params)?;
    out.table("drc", &drc)?;
    out.table("vertex_marginal", &vertex_marginal(&drc))?;
    out.table("edge_marginal", &edge_marginal(&drc))?;
    if params.all_vertices_open() {
        notes.push("a = 1: every vertex is open and the model is the random-cluster model".into());
    }

    let mut report = ExactReport {
        params: params.summary(),
        region: region_summary(&region, cfg),
        log_z_drc: drc.log_total(),
        z_drc: drc.total(),
        log_z_bcp: None,
        z_bcp: None,
        partition_identity_error: None,
        coupling_max_deviation: None,
        notes,
    };

    let q_int = params.integer_q();
    match q_int {
        Ok(q) if params.delta().is_finite() => {
            let (k, delta) = (params.k(), params.delta());
            let bcp = bcp_measure_with_boundary(&region, spin_bc, k, delta, q)?;
            out.table("bcp", &bcp)?;
            let n = region.interior_len() as f64;
            let wired_q = if bc == BoundaryCondition::One { params.q().ln() } else { 0.0 };
            let predicted = drc.log_total() + n * delta - wired_q;
            report.log_z_bcp = Some(bcp.log_total());
            report.z_bcp = Some(bcp.total());
            report.partition_identity_error = Some((bcp.log_total() - predicted).abs());

            let mu = coupling_measure_with_boundary(&region, spin_bc, k, delta, q)?;
            let dev = spin_marginal(&mu)
                .max_abs_diff(&bcp)
                .max(theta_marginal(&mu).max_abs_diff(&drc));
            report.coupling_max_deviation = Some(dev);

            let mut rows = Vec::new();
            let b = spin_bc.spin();
            let nv = region.interior_len();
            let mut targets: Vec<(usize, Target)> = Vec::new();
            for x in 0..nv {
                for y in x + 1..nv {
                    targets.push((x, Target::Vertex(y)));
                }
                if b != 0 && region.boundary_len() > 0 {
                    targets.push((x, Target::Boundary));
                }
            }
            for (x, t) in targets {
                let tau = two_point_from_spins(&bcp, q, b, x, t);
                let conn = connection_probability(&region, &bc, &drc, x, t)?;
                let scaled = (1.0 - 1.0 / params.q()) * conn;
                rows.push(CorrelationRow {
                    x,
                    target: match t {
                        Target::Vertex(y) => y.to_string(),
                        Target::Boundary => "boundary".into(),
                    },
                    tau: machine(tau),
                    connectivity: machine(conn),
                    scaled_connectivity: machine(scaled),
                    difference: machine(tau - scaled),
                });
            }
            out.records("correlations", &rows)?;
        }
        Ok(_) => report
            .notes
            .push("Δ = −∞ (a = 1): spin tables omitted".into()),
        Err(_) => report
            .notes
            .push(format!("q = {} is not an integer: spin tables omitted", params.q())),
    }
    out.json("report.json", &report)?;

    let mut s = format!(
        "a = {}, p = {}, q = {}, K = {}, Δ = {}\nZ^DRC = {}",
        human(params.a()),
        human(params.p()),
        human(params.q()),
        human(params.k()),
        human(params.delta()),
        human(report.z_drc)
    );
    if let (Some(z), Some(e), Some(d)) = (report.z_bcp, report.partition_identity_error, report.coupling_max_deviation) {
        s += &format!(
            "\nZ^BCP = {}\npartition identity error (log) = {}\ncoupling max deviation = {}",
            human(z),
            human(e),
            human(d)
        );
    }
    for n in &report.notes {
        s += &format!("\nnote: {n}");
    }
    Ok(s)
}

#[derive(Serialize)]
struct DominanceRow {
    check: String,
    condition: String,
    oracle_holds: bool,
    upsets_checked: usize,
    worst_gap: String,
    witness: String,
}

#[derive(Serialize)]
struct AuditWitness {
    pair: usize,
    reduced_holley: bool,
    full_holley: bool,
    dominance: bool,
    mu1: Vec<f64>,
    mu2: Vec<f64>,
}

#[derive(Serialize)]
struct AuditSummary {
    pairs: usize,
    indices: usize,
    seed: u64,
    holley_pairs: usize,
    reduced_without_full: usize,
    holley_without_dominance: usize,
    witnesses: Vec<AuditWitness>,
}

fn binary(dist: &FiniteDistribution<BitConfig>) -> Result<BinaryMeasure> {
    BinaryMeasure::from_distribution(dist)
}

fn vertex_binary(region: &Region, bc: &BoundaryCondition, m: &ModelParams) -> Result<BinaryMeasure> {
    binary(&vertex_measure(region, bc, m)?)
}

fn edge_binary(region: &Region, bc: &BoundaryCondition, m: &ModelParams) -> Result<BinaryMeasure> {
    binary(&edge_marginal(&drc_measure_with_boundary(region, bc, m)?))
}

/// Condition verdict for a check, or the reason it does not apply.
fn evaluate_check(
    check: DominanceCheck,
    region: &Region,
    bc: &BoundaryCondition,
    m1: &ModelParams,
    m2: &ModelParams,
) -> Result<(std::result::Result<bool, String>, DominanceReport)> {
    let delta = region.degree_bound();
    let cond = |r: Result<bool>| r.map_err(|e| e.to_string());
    Ok(match check {
        DominanceCheck::BoundaryOrder => {
            let c = if m1.all_vertices_open() || m1.q() < 1.0 || m1.q() > 2.0 {
                Err("needs a ∈ (0,1) and q ∈ [1,2]".to_string())
            } else {
                Ok(true)
            };
            let lo = vertex_binary(region, &BoundaryCondition::Zero, m1)?;
            let hi = vertex_binary(region, &BoundaryCondition::One, m1)?;
            (c, dominance_report(&lo, &hi)?)
        }
        DominanceCheck::Thm54I | DominanceCheck::Thm54Ii | DominanceCheck::Thm54Iii | DominanceCheck::Thm54Iv => {
            let which = match check {
                DominanceCheck::Thm54I => Thm54::I,
                DominanceCheck::Thm54Ii => Thm54::Ii,
                DominanceCheck::Thm54Iii => Thm54::Iii,
                _ => Thm54::Iv,
            };
            let c = cond(thm54_condition(which, m1, m2, delta));
            let r = dominance_report(&vertex_binary(region, bc, m1)?, &vertex_binary(region, bc, m2)?)?;
            (c, r)
        }
        DominanceCheck::Thm61A => {
            let c = cond(thm61_condition(Thm61::A, m1, m2, delta));
            (c, dominance_report(&edge_binary(region, bc, m1)?, &edge_binary(region, bc, m2)?)?)
        }
        DominanceCheck::Thm61B => {
            let c = cond(thm61_condition(Thm61::B, m1, m2, delta));
            (c, dominance_report(&edge_binary(region, bc, m2)?, &edge_binary(region, bc, m1)?)?)
        }
        DominanceCheck::Thm62 => {
            let c = cond(thm62_condition(m1, m2));
            (c, dominance_report(&edge_binary(region, bc, m1)?, &edge_binary(region, bc, m2)?)?)
        }
    })
}

/// Condition evaluators and the dominance oracle for each requested check,
/// plus an optional seeded Holley audit on random measure pairs.
pub fn cmd_dominance(cfg: &RunConfig, out: &mut Output) -> Result<String> {
    let m1 = cfg.model.resolve()?;
    let m2 = cfg.dominance.second.resolve()?;
    let region = cfg.region.build()?;
    let bc = cfg.region.drc_boundary();
    let mut rows = Vec::new();
    let mut summary = String::new();
    for &check in &cfg.dominance.checks {
        let (cond, report) = evaluate_check(check, &region, &bc, &m1, &m2)?;
        let condition = match &cond {
            Ok(true) => "met".to_string(),
            Ok(false) => "not met".to_string(),
            Err(why) => format!("not applicable: {why}"),
        };
        summary += &format!(
            "{:<16} condition {:<8} oracle {}\n",
            check.name(),
            match cond {
                Ok(true) => "met",
                Ok(false) => "not met",
                Err(_) => "n/a",
            },
            if report.holds { "holds" } else { "fails" }
        );
        rows.push(DominanceRow {
            check: check.name().to_string(),
            condition,
            oracle_holds: report.holds,
            upsets_checked: report.upsets_checked,
            worst_gap: machine(report.worst_gap),
            witness: report
                .violation
                .as_ref()
                .map(serde_json::to_string)
                .transpose()?
                .unwrap_or_default(),
        });
    }
    out.records("dominance", &rows)?;

    if cfg.dominance.audit_pairs > 0 {
        let audit = holley_audit(cfg.dominance.audit_pairs, cfg.dominance.audit_indices, cfg.seed)?;
        summary += &format!(
            "holley audit: {} of {} pairs satisfy the Holley condition, {} dominance failures, {} reduced/full disagreements\n",
            audit.holley_pairs, audit.pairs, audit.holley_without_dominance, audit.reduced_without_full
        );
        out.json("holley_audit.json", &audit)?;
    }
    Ok(summary.trim_end().to_string())
}

fn holley_audit(pairs: usize, n: usize, seed: u64) -> Result<AuditSummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = AuditSummary {
        pairs,
        indices: n,
        seed,
        holley_pairs: 0,
        reduced_without_full: 0,
        holley_without_dominance: 0,
        witnesses: Vec::new(),
    };
    for i in 0..pairs {
        let mu1 = BinaryMeasure::random_log_uniform(n, &mut rng);
        let mu2 = BinaryMeasure::random_log_uniform(n, &mut rng);
        let reduced = holley_check(&mu1, &mu2)?.holds;
        let full = holley_check_exhaustive(&mu1, &mu2)?.holds;
        let dom = dominance_report(&mu1, &mu2)?.holds;
        if full {
            s.holley_pairs += 1;
        }
        let odd = (reduced && !full) || (full && !dom);
        if reduced && !full {
            s.reduced_without_full += 1;
        }
        if full && !dom {
            s.holley_without_dominance += 1;
        }
        if odd {
            s.witnesses.push(AuditWitness {
                pair: i,
                reduced_holley: reduced,
                full_holley: full,
                dominance: dom,
                mu1: mu1.probs().to_vec(),
                mu2: mu2.probs().to_vec(),
            });
        }
    }
    Ok(s)
}

fn checkpoint_path(dir: &Path, chain: u64) -> PathBuf {
    dir.join(format!("checkpoint-{chain}.json"))
}

#[derive(Serialize)]
struct SummaryRow {
    observable: String,
    mean: String,
    stderr: String,
    samples: usize,
}

/// Run the configured chains; writes the merged series, a summary and one
/// checkpoint per chain.
pub fn cmd_sample(cfg: &RunConfig, out: &mut Output) -> Result<String> {
    let params = SamplerParams::from_model(&cfg.model.resolve()?)?;
    let region = cfg.region.build()?;
    let boundary = cfg.region.spin_boundary();
    let sp = &cfg.sampler;
    if sp.chains == 0 {
        return Err(Error::invalid("chains must be at least 1"));
    }
    let base = RunSettings {
        sweeps: sp.sweeps,
        burn_in: sp.burn_in,
        thin: sp.thin,
        seed: cfg.seed,
        stream: 0,
        schedule: sp.schedule,
        init: sp.init,
    };
    base.validate()?;

    use rayon::prelude::*;
    let run = |chain: u64| -> Result<(ObservableSeries, ChainState)> {
        let settings = RunSettings { stream: chain, ..base };
        let mut sampler = Sampler::new(region.clone(), boundary, params, settings.schedule)?;
        let mut state = match &sp.resume {
            Some(dir) => ChainState::load(&checkpoint_path(dir, chain))?,
            None => sampler.initial_state(settings.init, settings.seed, chain)?,
        };
        if state.sweep >= settings.sweeps {
            return Err(Error::invalid(format!(
                "checkpoint for chain {chain} is at sweep {}, nothing left to run up to {}",
                state.sweep, settings.sweeps
            )));
        }
        let series = continue_chain(&mut sampler, &mut state, &settings, &sp.observables)?;
        Ok((series, state))
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?;
    let results: Vec<(ObservableSeries, ChainState)> =
        pool.install(|| (0..sp.chains).into_par_iter().map(run).collect::<Result<_>>())?;

    let series: Vec<ObservableSeries> = results.iter().map(|(s, _)| s.clone()).collect();
    let merged = ObservableSeries::merge(&series)?;
    match out.format {
        Format::Csv => merged.write_csv(out.create("series.csv")?)?,
        Format::Json => out.json("series.json", &merged)?,
    }
    let estimates = summarize(&merged, DEFAULT_BATCHES);
    let rows: Vec<SummaryRow> = merged
        .names
        .iter()
        .zip(&estimates)
        .map(|(n, e)| SummaryRow {
            observable: n.clone(),
            mean: machine(e.mean),
            stderr: machine(e.stderr),
            samples: e.samples,
        })
        .collect();
    out.records("summary", &rows)?;
    for (chain, (_, state)) in results.iter().enumerate() {
        let path = checkpoint_path(&out.dir, chain as u64);
        state.save(&path)?;
        out.written.push(path);
    }

    let mut s = format!("{} samples from {} chain(s)", merged.len(), sp.chains);
    for (n, e) in merged.names.iter().zip(&estimates) {
        s += &format!("\n{n:<24} {} ± {}", human(e.mean), human(e.stderr));
    }
    Ok(s)
}

/// The configured (a, p) scan, an optional gnuplot matrix and optional hysteresis runs.
pub fn cmd_scan(cfg: &RunConfig, out: &mut Output) -> Result<String> {
    let q = cfg.model.resolve()?.integer_q()?;
    let sc = &cfg.scan;
    let mut grid = if sc.points.is_empty() {
        ScanGrid::product(&sc.a, &sc.p, q)?
    } else {
        ScanGrid::new(sc.points.iter().map(|x| (x[0], x[1])).collect(), q)?
    };
    grid.dim = sc.dim;
    grid.radius = sc.radius;
    grid.boundary = sc.boundary;
    grid.sweeps = cfg.sampler.sweeps;
    grid.burn_in = cfg.sampler.burn_in;
    grid.thin = cfg.sampler.thin;
    grid.seed = cfg.seed;
    grid.schedule = cfg.sampler.schedule;
    grid.init = cfg.sampler.init;
    grid.observables = cfg.sampler.observables.clone();

    let table = scan(&grid, cfg.jobs)?;
    out.scan_table("scan", &table)?;
    if let Some(obs) = sc.gnuplot {
        let name = format!("scan_{}.matrix", obs.name());
        table.write_gnuplot_matrix(out.create(&name)?, obs)?;
    }
    let mut s = format!(
        "{} grid points, q = {}, n = {}, boundary {}",
        table.rows.len(),
        q,
        grid.radius,
        grid.boundary.name()
    );
    if let Some(h) = &sc.hysteresis {
        for dir in [Sweep::Ascending, Sweep::Descending] {
            let t = hysteresis(&grid, h.p, &h.a, dir)?;
            let stem = match dir {
                Sweep::Ascending => "hysteresis_ascending",
                Sweep::Descending => "hysteresis_descending",
            };
            out.scan_table(stem, &t)?;
        }
        s += &format!("\nhysteresis runs at p = {} over {} a-values", human(h.p), h.a.len());
    }
    Ok(s)
}

#[derive(Serialize)]
struct ConstantRow {
    name: &'static str,
    value: String,
    rounded: String,
}

/// The two-dimensional constants table.
pub fn cmd_constants(_cfg: &RunConfig, out: &mut Output) -> Result<String> {
    let c = critical_constants(2)?;
    let rows: Vec<ConstantRow> = c
        .table()
        .into_iter()
        .map(|(name, v, r)| ConstantRow {
            name,
            value: machine(v),
            rounded: r,
        })
        .collect();
    out.records("constants", &rows)?;
    Ok(c.table()
        .into_iter()
        .map(|(n, v, _)| format!("{n:<14} {}", human(v)))
        .collect::<Vec<_>>()
        .join("\n"))
}
