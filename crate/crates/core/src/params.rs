//! Model parameters in both parametrizations.
//!
//! The DRC side uses (a, p, q); the BCP side uses (K, Δ, q) with
//! p = 1 − e^{−2K} and a/(1−a) = e^{−Δ}. The log-odds that enter the weights
//! are stored directly so neither route loses precision near a = 1 or p = 1.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    a: f64,
    p: f64,
    q: f64,
    k: f64,
    delta: f64,
    log_vertex_odds: f64,
    log_r: f64,
    log_edge_odds: f64,
}

fn check_q(q: f64) -> Result<()> {
    if q.is_finite() && q > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("q must be a positive real, got {q}")))
    }
}

impl ModelParams {
    /// DRC parametrization: a ∈ (0,1], p ∈ [0,1), q > 0.
    pub fn from_apq(a: f64, p: f64, q: f64) -> Result<Self> {
        if !(a > 0.0 && a <= 1.0) {
            return Err(Error::domain(format!("a must lie in (0,1], got {a}")));
        }
        if !(0.0..1.0).contains(&p) {
            return Err(Error::domain(format!("p must lie in [0,1), got {p}")));
        }
        check_q(q)?;
        let log_vertex_odds = if a == 1.0 {
            f64::INFINITY
        } else {
            a.ln() - (-a).ln_1p()
        };
        let log_one_minus_p = (-p).ln_1p();
        Ok(ModelParams {
            a,
            p,
            q,
            k: -0.5 * log_one_minus_p,
            delta: -log_vertex_odds,
            log_vertex_odds,
            log_r: 0.5 * log_one_minus_p,
            log_edge_odds: p.ln() - log_one_minus_p,
        })
    }

    /// BCP parametrization: K ≥ 0, Δ ∈ ℝ, q > 0.
    pub fn from_bcp(k: f64, delta: f64, q: f64) -> Result<Self> {
        if !(k >= 0.0 && k.is_finite()) {
            return Err(Error::domain(format!("K must be finite and nonnegative, got {k}")));
        }
        if !delta.is_finite() {
            return Err(Error::domain(format!("Δ must be finite, got {delta}")));
        }
        check_q(q)?;
        // a = e^{−Δ}/(1+e^{−Δ}) written to avoid overflow for either sign of Δ.
        let a = if delta >= 0.0 {
            let t = (-delta).exp();
            t / (1.0 + t)
        } else {
            1.0 / (1.0 + delta.exp())
        };
        Ok(ModelParams {
            a,
            p: -(-2.0 * k).exp_m1(),
            q,
            k,
            delta,
            log_vertex_odds: -delta,
            log_r: -k,
            log_edge_odds: if k == 0.0 {
                f64::NEG_INFINITY
            } else {
                (2.0 * k).exp_m1().ln()
            },
        })
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn p(&self) -> f64 {
        self.p
    }

    #[inline]
    pub fn q(&self) -> f64 {
        self.q
    }

    /// r = √(1−p).
    #[inline]
    pub fn r(&self) -> f64 {
        self.log_r.exp()
    }

    #[inline]
    pub fn k(&self) -> f64 {
        self.k
    }

    #[inline]
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// ln(a/(1−a)); +∞ when a = 1.
    #[inline]
    pub fn log_vertex_odds(&self) -> f64 {
        self.log_vertex_odds
    }

    /// ln r = ½ ln(1−p) = −K.
    #[inline]
    pub fn log_r(&self) -> f64 {
        self.log_r
    }

    /// ln(p/(1−p)); −∞ when p = 0.
    #[inline]
    pub fn log_edge_odds(&self) -> f64 {
        self.log_edge_odds
    }

    /// a/(1−a).
    pub fn vertex_odds(&self) -> f64 {
        self.log_vertex_odds.exp()
    }

    /// p/(1−p).
    pub fn edge_odds(&self) -> f64 {
        self.log_edge_odds.exp()
    }

    /// a = 1: every vertex is forced open.
    #[inline]
    pub fn all_vertices_open(&self) -> bool {
        self.a == 1.0
    }

    /// q as a spin count, for constructions on Σ_q.
    pub fn integer_q(&self) -> Result<u8> {
        let q = self.q;
        if q >= 1.0 && q <= u8::MAX as f64 && q.fract() == 0.0 {
            Ok(q as u8)
        } else {
            Err(Error::domain(format!(
                "spin space needs an integer q in 1..=255, got {q}"
            )))
        }
    }

    pub fn with_q(&self, q: f64) -> Result<Self> {
        check_q(q)?;
        Ok(ModelParams { q, ..*self })
    }

    pub fn summary(&self) -> ParamSummary {
        ParamSummary {
            a: self.a,
            p: self.p,
            q: self.q,
            k: self.k,
            delta: self.delta,
        }
    }
}

/// Both parametrizations side by side, for echoing in reports.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamSummary {
    pub a: f64,
    pub p: f64,
    pub q: f64,
    #[serde(rename = "K")]
    pub k: f64,
    pub delta: f64,
}
