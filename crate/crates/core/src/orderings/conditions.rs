//! Sufficient conditions for comparing vertex and edge marginals across
//! parameter sets, finite-energy bounds, and the single-edge witness that the
//! full DRC measure is not monotonic.

use serde::{Deserialize, Serialize};

use crate::config::{BitConfig, ThetaConfig, VertexConfig};
use crate::dist::FiniteDistribution;
use crate::error::{Error, Result};
use crate::exact::{drc_measure, open_subgraph_log_rc, Frame};
use crate::graph::{BoundaryCondition, Graph, Region};
use crate::params::ModelParams;

/// Relative slack for comparisons that may hold with equality.
const REL_TOL: f64 = 1e-12;

fn ge(lhs: f64, rhs: f64) -> bool {
    lhs >= rhs - REL_TOL * lhs.abs().max(rhs.abs())
}

fn ge_log(lhs: f64, rhs: f64) -> bool {
    lhs >= rhs - REL_TOL * (1.0 + lhs.abs().max(rhs.abs()))
}

fn check_a_open(m: &ModelParams, side: &str) -> Result<()> {
    if m.all_vertices_open() {
        return Err(Error::domain(format!("{side}: a must lie in (0,1)")));
    }
    Ok(())
}

fn check_q_range(m: &ModelParams, side: &str, lo: f64, hi: f64) -> Result<()> {
    if m.q() < lo || m.q() > hi {
        return Err(Error::domain(format!(
            "{side}: q = {} outside [{lo}, {hi}]",
            m.q()
        )));
    }
    Ok(())
}

/// Which of the four comparison conditions for vertex marginals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Thm54 {
    I,
    Ii,
    Iii,
    Iv,
}

impl Thm54 {
    pub const ALL: [Thm54; 4] = [Thm54::I, Thm54::Ii, Thm54::Iii, Thm54::Iv];

    pub fn name(&self) -> &'static str {
        match self {
            Thm54::I => "i",
            Thm54::Ii => "ii",
            Thm54::Iii => "iii",
            Thm54::Iv => "iv",
        }
    }
}

impl std::str::FromStr for Thm54 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "i" => Ok(Thm54::I),
            "ii" => Ok(Thm54::Ii),
            "iii" => Ok(Thm54::Iii),
            "iv" => Ok(Thm54::Iv),
            _ => Err(Error::invalid(format!("unknown comparison variant {s:?}"))),
        }
    }
}

/// ln[q (a/(1−a)) (1−p)^{δ/2}].
fn compcond_side(m: &ModelParams, delta_deg: usize) -> f64 {
    m.q().ln() + m.log_vertex_odds() + delta_deg as f64 * m.log_r()
}

/// Evaluates a sufficient condition for Φ₁ ≤st Φ₂ under a common boundary
/// condition on a lattice of degree δ.
///
/// Requires a_i ∈ (0,1) and q_i ∈ [1,2].
pub fn thm54_condition(which: Thm54, m1: &ModelParams, m2: &ModelParams, delta_deg: usize) -> Result<bool> {
    for (m, side) in [(m1, "first"), (m2, "second")] {
        check_a_open(m, side)?;
        check_q_range(m, side, 1.0, 2.0)?;
    }
    let compcond = || ge_log(compcond_side(m2, delta_deg), compcond_side(m1, delta_deg));
    Ok(match which {
        Thm54::I => m1.a() <= m2.a() && m1.p() <= m2.p() && m1.q() == m2.q(),
        Thm54::Ii => ge_log(
            m2.q().ln() + m2.log_vertex_odds(),
            m1.q().ln() + m1.log_vertex_odds() - delta_deg as f64 * m1.log_r(),
        ),
        Thm54::Iii => m1.p() <= m2.p() && m1.q() >= m2.q() && compcond(),
        Thm54::Iv => {
            m1.q() <= m2.q()
                && compcond()
                && ge(
                    m2.edge_odds() / m2.q(),
                    m1.edge_odds() / m1.q(),
                )
        }
    })
}

/// Which comparison for edge marginals with a₁ = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Thm61 {
    /// Υ₁ ≤st Υ₂.
    A,
    /// Υ₁ ≥st Υ₂.
    B,
}

/// w_j = (1/(q r^j)) (1−a)/a.
pub fn edge_weight_w(m: &ModelParams, j: usize) -> f64 {
    (-m.log_vertex_odds() - m.q().ln() - j as f64 * m.log_r()).exp()
}

/// Edge-marginal comparison between the random-cluster measure (a₁ = 1) and a
/// diluted one, on a graph of maximum degree δ.
pub fn thm61_condition(which: Thm61, m1: &ModelParams, m2: &ModelParams, delta_deg: usize) -> Result<bool> {
    if !m1.all_vertices_open() {
        return Err(Error::domain("the first measure must have a = 1"));
    }
    for (m, side) in [(m1, "first"), (m2, "second")] {
        if m.p() == 0.0 {
            return Err(Error::domain(format!("{side}: p must be positive")));
        }
        if m.q() < 1.0 {
            return Err(Error::domain(format!("{side}: q must be at least 1")));
        }
    }
    Ok(match which {
        Thm61::A => {
            if delta_deg == 0 {
                return Err(Error::domain("maximum degree must be at least 1"));
            }
            let wd = edge_weight_w(m2, delta_deg);
            let wd1 = edge_weight_w(m2, delta_deg - 1);
            let lhs = (1.0 - m2.p()) / m2.p() * (1.0 + 2.0 * wd + wd * wd1);
            let rhs = (1.0 - m1.p()) / m1.p();
            m2.q() <= m1.q() && ge(rhs, lhs)
        }
        Thm61::B => m1.p() >= m2.p() && m1.q() <= m2.q(),
    })
}

/// Edge-marginal comparison at common q ∈ [1,2]: a₁ ≤ a₂ and p₁ ≤ p₂.
pub fn thm62_condition(m1: &ModelParams, m2: &ModelParams) -> Result<bool> {
    for (m, side) in [(m1, "first"), (m2, "second")] {
        check_a_open(m, side)?;
        check_q_range(m, side, 1.0, 2.0)?;
        if m.p() == 0.0 {
            return Err(Error::domain(format!("{side}: p must lie in (0,1)")));
        }
    }
    Ok(m1.q() == m2.q() && m1.a() <= m2.a() && m1.p() <= m2.p())
}

/// The quantities entering the single-vertex comparison inequality.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prop53Report {
    /// b(x, ψ): edges from x to ψ-open vertices of V⁺.
    pub b: usize,
    /// μ^i_{Λ,ψ^x}(I_x): probability that x has no open incident edge.
    pub isolation: [f64; 2],
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Single-vertex comparison at (ψ, x) with ψ_x = 0 between (params₁, λ₁)
/// and (params₂, λ₂):
/// q₂(a₂/(1−a₂))(1−p₂)^{b/2}/μ²(I_x) ≥ q₁(a₁/(1−a₁))(1−p₁)^{b/2}/μ¹(I_x).
pub fn prop53_condition(
    side1: (&ModelParams, &BoundaryCondition),
    side2: (&ModelParams, &BoundaryCondition),
    region: &Region,
    psi: VertexConfig,
    x: usize,
) -> Result<Prop53Report> {
    let (m1, bc1) = side1;
    let (m2, bc2) = side2;
    check_a_open(m1, "first")?;
    check_a_open(m2, "second")?;
    check_q_range(m1, "first", 1.0, f64::INFINITY)?;
    check_q_range(m2, "second", 1.0, 2.0)?;
    if psi.len() != region.interior_len() || x >= psi.len() {
        return Err(Error::invalid("ψ or x does not match the region"));
    }
    if psi.get(x) {
        return Err(Error::invalid("x must be closed in ψ"));
    }
    let f1 = Frame::new(region, bc1)?;
    let f2 = Frame::new(region, bc2)?;
    let with_x = psi.with(x, true);
    let iso = |f: &Frame, m: &ModelParams| {
        let (_, closed) = open_subgraph_log_rc(f, m, psi);
        let (_, open) = open_subgraph_log_rc(f, m, with_x);
        (m.q().ln() + closed - open).exp()
    };
    let iso1 = iso(&f1, m1);
    let iso2 = iso(&f2, m2);
    let b = |f: &Frame| {
        region
            .graph()
            .neighbors(x)
            .iter()
            .filter(|&&(y, _)| f.is_open(psi, y))
            .count()
    };
    let (b1, b2) = (b(&f1), b(&f2));
    if b1 != b2 {
        return Err(Error::invalid("boundary conditions open different neighbours of x"));
    }
    let lhs = (m2.q().ln() + m2.log_vertex_odds() + b2 as f64 * m2.log_r()).exp() / iso2;
    let rhs = (m1.q().ln() + m1.log_vertex_odds() + b1 as f64 * m1.log_r()).exp() / iso1;
    Ok(Prop53Report {
        b: b2,
        isolation: [iso1, iso2],
        lhs,
        rhs,
        holds: ge(lhs, rhs),
    })
}

/// (qa/(1−a+qa), aq/(aq+(1−a)r^δ)): bounds on the conditional probability
/// that a vertex is open given all others, valid for q ∈ [1,2].
pub fn finite_energy_bounds(m: &ModelParams, delta_deg: usize) -> (f64, f64) {
    let (a, q) = (m.a(), m.q());
    let lower = q * a / (1.0 - a + q * a);
    let r_delta = (delta_deg as f64 * m.log_r()).exp();
    let upper = a * q / (a * q + (1.0 - a) * r_delta);
    (lower, upper)
}

/// Φ(J_x | states off x) for every configuration of the other vertices,
/// in increasing order of that configuration (with x cleared).
pub fn open_conditionals(dist: &FiniteDistribution<VertexConfig>, x: usize) -> Result<Vec<(VertexConfig, f64)>> {
    let n = dist
        .support()
        .next()
        .map(BitConfig::len)
        .ok_or_else(|| Error::invalid("empty distribution"))?;
    if x >= n {
        return Err(Error::invalid("vertex out of range"));
    }
    let mut out = Vec::new();
    for rest in BitConfig::all(n).filter(|c| !c.get(x)) {
        let closed = dist.prob(&rest);
        let open = dist.prob(&rest.with(x, true));
        if closed + open > 0.0 {
            out.push((rest, open / (closed + open)));
        }
    }
    Ok(out)
}

/// The two conditional probabilities on K₂ showing the DRC measure is not monotone.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NonMonotonicityWitness {
    /// φ(ψ_y = 1 | ψ_x = 0, ω_e = 0); equals qa/(qa+1−a).
    pub value_closed: f64,
    /// φ(ψ_y = 1 | ψ_x = 1, ω_e = 0); equals qar/(qar+1−a).
    pub value_open: f64,
    pub strict: bool,
}

/// Conditional laws of ψ_y on K₂, read off the exact DRC table.
pub fn nonmonotonicity_witness(a: f64, p: f64, q: f64) -> Result<NonMonotonicityWitness> {
    if !(a > 0.0 && a < 1.0 && p > 0.0 && p < 1.0) {
        return Err(Error::domain("the witness needs a, p in (0,1)"));
    }
    let m = ModelParams::from_apq(a, p, q)?;
    let table = drc_measure(&Graph::complete(2), &m)?;
    let theta = |x: bool, y: bool| ThetaConfig {
        psi: BitConfig::from_bools(&[x, y]),
        omega: BitConfig::zeros(1),
    };
    let cond = |x: bool| {
        let open = table.prob(&theta(x, true));
        open / (open + table.prob(&theta(x, false)))
    };
    let (value_closed, value_open) = (cond(false), cond(true));
    Ok(NonMonotonicityWitness {
        value_closed,
        value_open,
        strict: value_closed > value_open,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(a: f64, p: f64, q: f64) -> ModelParams {
        ModelParams::from_apq(a, p, q).unwrap()
    }

    #[test]
    fn thm54_examples() {
        assert!(thm54_condition(Thm54::Ii, &mp(0.1, 0.5, 2.0), &mp(0.35, 0.9, 2.0), 4).unwrap());
        let m = mp(0.3, 0.4, 1.5);
        for w in [Thm54::I, Thm54::Iii, Thm54::Iv] {
            assert!(thm54_condition(w, &m, &m, 4).unwrap(), "{w:?}");
        }
        // (ii) pays the factor (1−p₁)^{−δ/2} even at equal parameters.
        assert!(!thm54_condition(Thm54::Ii, &m, &m, 4).unwrap());
        assert!(!thm54_condition(Thm54::Iii, &mp(0.5, 0.4, 2.0), &mp(0.4, 0.4, 2.0), 4).unwrap());
        assert!(thm54_condition(Thm54::I, &mp(0.5, 0.4, 3.0), &mp(0.6, 0.4, 3.0), 4).is_err());
    }

    #[test]
    fn thm61_example() {
        let m2 = mp(0.5, 0.75, 2.0);
        assert!((edge_weight_w(&m2, 4) - 8.0).abs() < 1e-12);
        assert!((edge_weight_w(&m2, 3) - 4.0).abs() < 1e-12);
        let p_max = 3.0 / 52.0;
        assert!(thm61_condition(Thm61::A, &mp(1.0, p_max * 0.999, 2.0), &m2, 4).unwrap());
        assert!(!thm61_condition(Thm61::A, &mp(1.0, p_max * 1.001, 2.0), &m2, 4).unwrap());
        let same = mp(1.0, 0.4, 2.0);
        assert!(thm61_condition(Thm61::B, &same, &mp(0.5, 0.4, 2.0), 4).unwrap());
        assert!(thm61_condition(Thm61::A, &mp(0.5, 0.4, 2.0), &m2, 4).is_err());
    }

    #[test]
    fn finite_energy_examples() {
        let (lo, _) = finite_energy_bounds(&mp(0.5, 0.3, 1.0), 4);
        assert!((lo - 0.5).abs() < 1e-15);
        let (lo, hi) = finite_energy_bounds(&mp(0.4, 0.0, 1.5), 4);
        assert!((lo - hi).abs() < 1e-15);
        let (lo, hi) = finite_energy_bounds(&mp(0.3, 0.5, 2.0), 4);
        assert!((lo - 0.6 / 1.3).abs() < 1e-12);
        assert!((hi - 0.6 / (0.6 + 0.7 * 0.25)).abs() < 1e-12);
    }

    #[test]
    fn witness_closed_forms() {
        let w = nonmonotonicity_witness(0.5, 0.5, 2.0).unwrap();
        assert!((w.value_closed - 2.0 / 3.0).abs() < 1e-12);
        let s = 2f64.sqrt();
        assert!((w.value_open - s / (s + 1.0)).abs() < 1e-12);
        assert!(w.strict);
        let w = nonmonotonicity_witness(0.5, 0.75, 1.0).unwrap();
        assert!((w.value_closed - 0.5).abs() < 1e-12);
        assert!((w.value_open - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn prop53_equal_sides_hold() {
        let region = Region::from_graph(Graph::complete(2));
        let m = mp(0.4, 0.5, 2.0);
        let bc = BoundaryCondition::Zero;
        let psi = BitConfig::parse("01").unwrap();
        let r = prop53_condition((&m, &bc), (&m, &bc), &region, psi, 0).unwrap();
        assert!(r.holds);
        assert_eq!(r.b, 1);
        // μ(I_x) on K₂ with both ends open: q²/(q² + q v) with v = p/(1−p) = 1.
        assert!((r.isolation[0] - 4.0 / 6.0).abs() < 1e-12);
    }
}
