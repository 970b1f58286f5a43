//! Configuration files and the `bcp` command-line tool.
//!
//! Every flag can also be set through an environment variable with prefix
//! `BCP_` (`BCP_CONFIG`, `BCP_SEED`, `BCP_JOBS`, `BCP_OUT_DIR`, `BCP_FORMAT`).
//! Precedence: flag, then environment, then config file, then defaults.

mod commands;
mod config;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::{cmd_constants, cmd_dominance, cmd_exact, cmd_sample, cmd_scan, human, Output};
pub use config::{
    BoundarySpec, CommandName, DominanceCheck, DominanceSpec, Format, GraphSpec, HysteresisSpec, ModelSpec,
    RegionSpec, RunConfig, SamplerSpec, ScanSpec,
};

use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "bcp", version, about = "Blume-Capel-Potts and diluted random-cluster toolkit")]
pub struct Cli {
    /// TOML run configuration.
    #[arg(long, global = true, env = "BCP_CONFIG")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, env = "BCP_SEED")]
    pub seed: Option<u64>,
    /// Maximum concurrent chains or grid points.
    #[arg(long, global = true, env = "BCP_JOBS")]
    pub jobs: Option<usize>,
    #[arg(long, global = true, env = "BCP_OUT_DIR")]
    pub out_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, env = "BCP_FORMAT")]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact tables, partition functions and the coupling check.
    Exact,
    /// Comparison conditions against the dominance oracle.
    Dominance {
        /// Random pairs for the Holley audit.
        #[arg(long)]
        audit_pairs: Option<usize>,
    },
    /// Run Monte Carlo chains.
    Sample {
        #[arg(long)]
        sweeps: Option<u64>,
        #[arg(long)]
        burn_in: Option<u64>,
        #[arg(long)]
        chains: Option<u64>,
        /// Directory of checkpoints to continue from.
        #[arg(long)]
        resume: Option<PathBuf>,
    },
    /// Scan an (a, p) grid on a lattice box.
    Scan {
        #[arg(long)]
        radius: Option<i64>,
        #[arg(long)]
        sweeps: Option<u64>,
        #[arg(long)]
        burn_in: Option<u64>,
    },
    /// Print and write the two-dimensional constants.
    Constants,
}

impl Cli {
    /// The effective configuration and command after applying overrides.
    pub fn resolve(&self) -> Result<(RunConfig, CommandName)> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if self.jobs.is_some() {
            cfg.jobs = self.jobs;
        }
        if self.out_dir.is_some() {
            cfg.out_dir = self.out_dir.clone();
        }
        if self.format.is_some() {
            cfg.format = self.format;
        }
        let name = match &self.command {
            None => cfg
                .command
                .ok_or_else(|| Error::invalid("no subcommand given on the command line or in the config"))?,
            Some(Command::Exact) => CommandName::Exact,
            Some(Command::Dominance { audit_pairs }) => {
                if let Some(n) = audit_pairs {
                    cfg.dominance.audit_pairs = *n;
                }
                CommandName::Dominance
            }
            Some(Command::Sample {
                sweeps,
                burn_in,
                chains,
                resume,
            }) => {
                override_chain(&mut cfg, *sweeps, *burn_in);
                if let Some(c) = chains {
                    cfg.sampler.chains = *c;
                }
                if resume.is_some() {
                    cfg.sampler.resume = resume.clone();
                }
                CommandName::Sample
            }
            Some(Command::Scan { radius, sweeps, burn_in }) => {
                override_chain(&mut cfg, *sweeps, *burn_in);
                if let Some(r) = radius {
                    cfg.scan.radius = *r;
                }
                CommandName::Scan
            }
            Some(Command::Constants) => CommandName::Constants,
        };
        cfg.command = Some(name);
        Ok((cfg, name))
    }
}

fn override_chain(cfg: &mut RunConfig, sweeps: Option<u64>, burn_in: Option<u64>) {
    if let Some(s) = sweeps {
        cfg.sampler.sweeps = s;
    }
    if let Some(b) = burn_in {
        cfg.sampler.burn_in = b;
    }
}

/// Run one command; the effective configuration is saved next to the outputs.
pub fn run(cfg: &RunConfig, name: CommandName) -> Result<(String, Vec<PathBuf>)> {
    let dir = cfg.out_dir.clone().unwrap_or_else(|| PathBuf::from("bcp-out"));
    let mut out = Output::new(dir, cfg.format.unwrap_or_default())?;
    let summary = match name {
        CommandName::Exact => cmd_exact(cfg, &mut out)?,
        CommandName::Dominance => cmd_dominance(cfg, &mut out)?,
        CommandName::Sample => cmd_sample(cfg, &mut out)?,
        CommandName::Scan => cmd_scan(cfg, &mut out)?,
        CommandName::Constants => cmd_constants(cfg, &mut out)?,
    };
    let path = out.dir.join("config.toml");
    std::fs::write(&path, cfg.to_toml()?)?;
    out.written.push(path);
    Ok((summary, out.written))
}

/// Entry point used by the binary; returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match cli.resolve().and_then(|(cfg, name)| run(&cfg, name)) {
        Ok((summary, files)) => {
            use std::io::Write;
            // A closed pipe on stdout is not an error for the run itself.
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{summary}");
            for f in files {
                let _ = writeln!(stdout, "wrote {}", f.display());
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
