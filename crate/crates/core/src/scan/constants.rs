//! Square-lattice constants, the zero-field arc and comparison regions of the (a, p) plane.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::orderings::{thm61_condition, Thm61};
use crate::params::ModelParams;

/// Site percolation threshold of ℤ² (numerical estimate).
pub const P_C_SITE: f64 = 0.592746;

/// Critical constants of the two-dimensional model.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalConstants {
    /// Critical edge parameter of the q = 2 random-cluster model, √2/(1+√2).
    pub pi_c: f64,
    pub p_c_site: f64,
    /// Tri-critical point (ā, p̄) of the q = 1 model.
    pub a_bar: f64,
    pub p_bar: f64,
    /// −2 ln(1 − π_c).
    pub k_c: f64,
    /// (1 − p_c^site)/(1 + p_c^site).
    pub a_closed_site: f64,
    /// p_c^site/(2 − p_c^site).
    pub a_open_site: f64,
}

/// The constants for ℤ^d. Only d = 2 is available.
pub fn critical_constants(d: usize) -> Result<CriticalConstants> {
    if d != 2 {
        return Err(Error::Unsupported(format!("critical constants are only tabulated for d = 2, not d = {d}")));
    }
    let s2 = 2f64.sqrt();
    let pi_c = s2 / (1.0 + s2);
    let t = (1.0 + s2).powi(4);
    Ok(CriticalConstants {
        pi_c,
        p_c_site: P_C_SITE,
        a_bar: 1.0 / (1.0 + t),
        p_bar: 1.0 - 1.0 / t,
        k_c: -2.0 * (-pi_c).ln_1p(),
        a_closed_site: (1.0 - P_C_SITE) / (1.0 + P_C_SITE),
        a_open_site: P_C_SITE / (2.0 - P_C_SITE),
    })
}

impl CriticalConstants {
    /// (name, value, value rounded as usually quoted).
    pub fn table(&self) -> Vec<(&'static str, f64, String)> {
        vec![
            ("pi_c", self.pi_c, format!("{:.3}", self.pi_c)),
            ("p_c_site", self.p_c_site, format!("{:.3}", self.p_c_site)),
            ("a_bar", self.a_bar, format!("{:.3}", self.a_bar)),
            ("p_bar", self.p_bar, format!("{:.3}", self.p_bar)),
            ("K_c", self.k_c, format!("{:.6}", self.k_c)),
            ("a_closed_site", self.a_closed_site, format!("{:.2}", self.a_closed_site)),
            ("a_open_site", self.a_open_site, format!("{:.2}", self.a_open_site)),
        ]
    }
}

fn odds_to_prob(x: f64) -> f64 {
    x / (1.0 + x)
}

/// a on the arc a/(1−a) = (1−p)^{exponent}.
pub fn arc_point(p: f64, exponent: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&p) {
        return Err(Error::domain(format!("p must lie in [0,1), got {p}")));
    }
    Ok(odds_to_prob((exponent * (-p).ln_1p()).exp()))
}

/// The zero-field arc a/(1−a) = (1−p)^{d/2} of the q = 1 model.
pub fn h_zero_arc(p: f64, d: usize) -> Result<f64> {
    arc_point(p, d as f64 / 2.0)
}

/// Fixed ratio D/J of the q = 1 Ising representation: a/(1−a) = (1−p)^{D/(2J)}.
pub fn fixed_ratio_arc(p: f64, ratio: f64) -> Result<f64> {
    arc_point(p, ratio / 2.0)
}

/// Which comparison regions of the (a, p) plane contain a point, for q = 2 on ℤ².
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionFlags {
    /// 2a/(1−a) < 1−p and p > p̄: infinite closed vertex-cluster.
    pub closed_strip: bool,
    /// 2a/(1−a) > 8(1−p)/(2−p)³ and p > 2p̄/(1+p̄): infinite open vertex- and edge-clusters.
    pub open_strip: bool,
    /// p < π_c: no infinite open edge-cluster.
    pub below_pi_c: bool,
    /// Edge marginal dominates the critical random-cluster one: infinite open edge-cluster.
    pub edge_cluster_by_comparison: bool,
    /// Dominated by the product measure at a = (1−p_c^site)/(1+p_c^site), p = 0:
    /// infinite closed vertex-cluster.
    pub closed_by_comparison: bool,
    /// a > p_c^site/(2−p_c^site): infinite open vertex-cluster.
    pub open_by_comparison: bool,
}

pub fn region_predicates(a: f64, p: f64) -> Result<RegionFlags> {
    if !(a > 0.0 && a < 1.0 && p > 0.0 && p < 1.0) {
        return Err(Error::domain(format!("(a, p) must lie in (0,1)², got ({a}, {p})")));
    }
    let c = critical_constants(2)?;
    let odds = a / (1.0 - a);
    let crit = ModelParams::from_apq(1.0, c.pi_c, 2.0)?;
    let here = ModelParams::from_apq(a, p, 2.0)?;
    let closed_odds = c.a_closed_site / (1.0 - c.a_closed_site);
    Ok(RegionFlags {
        closed_strip: 2.0 * odds < 1.0 - p && p > c.p_bar,
        open_strip: 2.0 * odds > 8.0 * (1.0 - p) / (2.0 - p).powi(3) && p > 2.0 * c.p_bar / (1.0 + c.p_bar),
        below_pi_c: p < c.pi_c,
        edge_cluster_by_comparison: thm61_condition(Thm61::A, &crit, &here, 4)?,
        closed_by_comparison: odds < closed_odds * (1.0 - p).powi(2),
        open_by_comparison: a > c.a_open_site,
    })
}
