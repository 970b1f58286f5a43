//! TOML run configuration.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_box, BoundaryCondition, Graph, Region, SpinBoundary};
use crate::params::ModelParams;
use crate::sampler::{InitialState, Schedule};
use crate::scan::{Observable, ScanBoundary};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CommandName {
    Exact,
    Dominance,
    Sample,
    Scan,
    Constants,
}

/// Model parameters: exactly one of the pairs (a, p) or (K, Δ), plus q.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    pub q: f64,
}

impl Default for ModelSpec {
    fn default() -> Self {
        ModelSpec {
            a: Some(0.5),
            p: Some(0.5),
            k: None,
            delta: None,
            q: 2.0,
        }
    }
}

impl ModelSpec {
    pub fn resolve(&self) -> Result<ModelParams> {
        match (self.a, self.p, self.k, self.delta) {
            (Some(a), Some(p), None, None) => ModelParams::from_apq(a, p, self.q),
            (None, None, Some(k), Some(d)) => ModelParams::from_bcp(k, d, self.q),
            _ => Err(Error::invalid(
                "give exactly one of the pairs (a, p) or (K, delta) in the model section",
            )),
        }
    }
}

/// The underlying graph or lattice box.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GraphSpec {
    Complete { n: usize },
    Path { n: usize },
    Cycle { n: usize },
    Edges { vertices: usize, edges: Vec<[usize; 2]> },
    /// An edge-list file.
    File { path: PathBuf },
    /// [-n, n]^d with its boundary.
    Box { d: usize, n: i64 },
    /// ∏[lo_i, hi_i] with its boundary.
    BoxBetween { lo: Vec<i64>, hi: Vec<i64> },
    /// The torus on [-n, n]^d.
    Periodic { d: usize, n: i64 },
}

/// Boundary of a region; ignored for abstract graphs and tori.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundarySpec {
    #[default]
    Zero,
    One,
}

fn default_spin() -> u8 {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionSpec {
    #[serde(default)]
    pub boundary: BoundarySpec,
    /// Boundary spin paired with `one`.
    #[serde(default = "default_spin")]
    pub spin: u8,
    pub graph: GraphSpec,
}

impl Default for RegionSpec {
    fn default() -> Self {
        RegionSpec {
            boundary: BoundarySpec::Zero,
            spin: 1,
            graph: GraphSpec::Complete { n: 2 },
        }
    }
}

impl RegionSpec {
    pub fn build(&self) -> Result<Region> {
        let graph = |g: Graph| Ok(Region::from_graph(g));
        match &self.graph {
            GraphSpec::Complete { n } => graph(Graph::complete(*n)),
            GraphSpec::Path { n } => graph(Graph::path(*n)),
            GraphSpec::Cycle { n } => graph(Graph::cycle(*n)?),
            GraphSpec::Edges { vertices, edges } => {
                graph(Graph::new(*vertices, edges.iter().map(|e| (e[0], e[1])).collect())?)
            }
            GraphSpec::File { path } => graph(Graph::parse_edge_list(&std::fs::read_to_string(path)?)?),
            GraphSpec::Box { d, n } => build_box(*d, *n),
            GraphSpec::BoxBetween { lo, hi } => {
                Region::box_between(lo, hi, crate::graph::DEFAULT_MAX_REGION_VERTICES)
            }
            GraphSpec::Periodic { d, n } => Region::periodic_box(*d, *n),
        }
    }

    pub fn drc_boundary(&self) -> BoundaryCondition {
        match self.boundary {
            BoundarySpec::Zero => BoundaryCondition::Zero,
            BoundarySpec::One => BoundaryCondition::One,
        }
    }

    pub fn spin_boundary(&self) -> SpinBoundary {
        match self.boundary {
            BoundarySpec::Zero => SpinBoundary::Free,
            BoundarySpec::One => SpinBoundary::Fixed(self.spin),
        }
    }
}

fn default_sweeps() -> u64 {
    2000
}
fn default_burn_in() -> u64 {
    500
}
fn default_one() -> u64 {
    1
}
fn default_observables() -> Vec<Observable> {
    Observable::ALL.to_vec()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplerSpec {
    #[serde(default = "default_sweeps")]
    pub sweeps: u64,
    #[serde(default = "default_burn_in")]
    pub burn_in: u64,
    #[serde(default = "default_one")]
    pub thin: u64,
    #[serde(default = "default_one")]
    pub chains: u64,
    #[serde(default)]
    pub schedule: Schedule,
    #[serde(default)]
    pub init: InitialState,
    #[serde(default = "default_observables")]
    pub observables: Vec<Observable>,
    /// Directory holding `checkpoint-<chain>.json` files to continue from.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resume: Option<PathBuf>,
}

impl Default for SamplerSpec {
    fn default() -> Self {
        SamplerSpec {
            sweeps: default_sweeps(),
            burn_in: default_burn_in(),
            thin: 1,
            chains: 1,
            schedule: Schedule::Raster,
            init: InitialState::Random,
            observables: default_observables(),
            resume: None,
        }
    }
}

fn default_dim() -> usize {
    2
}
fn default_radius() -> i64 {
    crate::scan::DEFAULT_RADIUS
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HysteresisSpec {
    pub p: f64,
    pub a: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSpec {
    /// Product grid a × p, used when `points` is empty.
    #[serde(default)]
    pub a: Vec<f64>,
    #[serde(default)]
    pub p: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<[f64; 2]>,
    #[serde(default = "default_dim")]
    pub dim: usize,
    #[serde(default = "default_radius")]
    pub radius: i64,
    #[serde(default)]
    pub boundary: ScanBoundary,
    /// Observable written as a gnuplot matrix.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gnuplot: Option<Observable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hysteresis: Option<HysteresisSpec>,
}

impl Default for ScanSpec {
    fn default() -> Self {
        ScanSpec {
            a: vec![0.2, 0.4, 0.6, 0.8],
            p: vec![0.2, 0.4, 0.6, 0.8],
            points: Vec::new(),
            dim: 2,
            radius: default_radius(),
            boundary: ScanBoundary::One,
            gnuplot: None,
            hysteresis: None,
        }
    }
}

/// Checks run by the `dominance` command.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DominanceCheck {
    /// Φ^ZERO ≤st Φ^ONE at the first parameter set.
    BoundaryOrder,
    Thm54I,
    Thm54Ii,
    Thm54Iii,
    Thm54Iv,
    /// Υ₁ ≤st Υ₂ with a₁ = 1.
    Thm61A,
    /// Υ₁ ≥st Υ₂ with a₁ = 1.
    Thm61B,
    /// Υ₁ ≤st Υ₂ at common q ∈ [1,2].
    Thm62,
}

impl DominanceCheck {
    pub const ALL: [DominanceCheck; 8] = [
        DominanceCheck::BoundaryOrder,
        DominanceCheck::Thm54I,
        DominanceCheck::Thm54Ii,
        DominanceCheck::Thm54Iii,
        DominanceCheck::Thm54Iv,
        DominanceCheck::Thm61A,
        DominanceCheck::Thm61B,
        DominanceCheck::Thm62,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            DominanceCheck::BoundaryOrder => "boundary_order",
            DominanceCheck::Thm54I => "thm54_i",
            DominanceCheck::Thm54Ii => "thm54_ii",
            DominanceCheck::Thm54Iii => "thm54_iii",
            DominanceCheck::Thm54Iv => "thm54_iv",
            DominanceCheck::Thm61A => "thm61_a",
            DominanceCheck::Thm61B => "thm61_b",
            DominanceCheck::Thm62 => "thm62",
        }
    }
}

fn default_checks() -> Vec<DominanceCheck> {
    DominanceCheck::ALL.to_vec()
}
fn default_audit_indices() -> usize {
    4
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DominanceSpec {
    #[serde(default = "default_checks")]
    pub checks: Vec<DominanceCheck>,
    /// Second parameter set; the first is the `model` section.
    #[serde(default)]
    pub second: ModelSpec,
    /// Random measure pairs in the Holley audit (0 skips it).
    #[serde(default)]
    pub audit_pairs: usize,
    #[serde(default = "default_audit_indices")]
    pub audit_indices: usize,
}

impl Default for DominanceSpec {
    fn default() -> Self {
        DominanceSpec {
            checks: default_checks(),
            second: ModelSpec::default(),
            audit_pairs: 0,
            audit_indices: 4,
        }
    }
}

/// Everything one run needs. Command-line flags override the file.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<CommandName>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default)]
    pub model: ModelSpec,
    #[serde(default)]
    pub region: RegionSpec,
    #[serde(default)]
    pub sampler: SamplerSpec,
    #[serde(default)]
    pub scan: ScanSpec,
    #[serde(default)]
    pub dominance: DominanceSpec,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::invalid(format!("config: {e}")))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Serde(e.to_string()))
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }
}
