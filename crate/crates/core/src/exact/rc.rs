//! Random-cluster partition functions Z^RC_{p,q}(W, F), optionally with
//! vertices wired together off the graph.
//!
//! Computed by a frontier sweep over the edges: the state is the partition of
//! the currently active vertices into connected classes. Every term is
//! positive, so there is no cancellation, and weights are rescaled after each
//! edge to stay inside f64 range.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// ln(1 + e^x) without overflow.
fn log1p_exp(x: f64) -> f64 {
    if x > 35.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

fn canonical(labels: &mut [u8]) {
    let mut map = [u8::MAX; 256];
    let mut next = 0u8;
    for l in labels.iter_mut() {
        if map[*l as usize] == u8::MAX {
            map[*l as usize] = next;
            next += 1;
        }
        *l = map[*l as usize];
    }
}

/// ln Z^RC for a multigraph given as an edge list on `0..n`; loops allowed.
pub(crate) fn log_rc_multigraph(n: usize, edges: &[(usize, usize)], log_v: f64, ln_q: f64) -> f64 {
    let mut log_scale = 0.0;
    let mut plain = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        if u == v {
            // A loop never changes k, so it contributes 1 + p/(1−p).
            log_scale += log1p_exp(log_v);
        } else {
            plain.push((u, v));
        }
    }
    let mut first = vec![usize::MAX; n];
    let mut last = vec![0usize; n];
    for (i, &(u, v)) in plain.iter().enumerate() {
        for w in [u, v] {
            if first[w] == usize::MAX {
                first[w] = i;
            }
            last[w] = i;
        }
    }
    let isolated = first.iter().filter(|&&f| f == usize::MAX).count();
    log_scale += isolated as f64 * ln_q;

    let q = ln_q.exp();
    let v_open = log_v.exp();
    let mut frontier: Vec<usize> = Vec::new();
    let mut states: HashMap<Vec<u8>, f64> = HashMap::from([(Vec::new(), 1.0)]);

    for (i, &(u, v)) in plain.iter().enumerate() {
        for w in [u, v] {
            if first[w] == i && !frontier.contains(&w) {
                frontier.push(w);
                states = states
                    .into_iter()
                    .map(|(mut s, wt)| {
                        let fresh = s.iter().copied().max().map_or(0, |m| m + 1);
                        s.push(fresh);
                        (s, wt)
                    })
                    .collect();
            }
        }
        let pu = frontier.iter().position(|&x| x == u).expect("u active");
        let pv = frontier.iter().position(|&x| x == v).expect("v active");

        let mut next: HashMap<Vec<u8>, f64> = HashMap::with_capacity(states.len() * 2);
        for (s, wt) in states {
            if v_open > 0.0 {
                let (lu, lv) = (s[pu], s[pv]);
                let mut merged = s.clone();
                if lu != lv {
                    for l in merged.iter_mut() {
                        if *l == lv {
                            *l = lu;
                        }
                    }
                    canonical(&mut merged);
                }
                *next.entry(merged).or_insert(0.0) += wt * v_open;
            }
            *next.entry(s).or_insert(0.0) += wt;
        }
        states = next;

        let mut leaving: Vec<usize> = [u, v].into_iter().filter(|&w| last[w] == i).collect();
        leaving.dedup();
        for w in leaving {
            let pos = frontier.iter().position(|&x| x == w).expect("leaving vertex active");
            frontier.remove(pos);
            let mut next: HashMap<Vec<u8>, f64> = HashMap::with_capacity(states.len());
            for (mut s, wt) in states {
                let label = s.remove(pos);
                let closes = !s.contains(&label);
                canonical(&mut s);
                *next.entry(s).or_insert(0.0) += if closes { wt * q } else { wt };
            }
            states = next;
        }

        let m = states.values().copied().fold(0.0, f64::max);
        if m > 0.0 && m.is_finite() {
            for wt in states.values_mut() {
                *wt /= m;
            }
            log_scale += m.ln();
        }
    }
    debug_assert!(frontier.is_empty());
    log_scale + states.get(&Vec::new()).copied().unwrap_or(0.0).ln()
}

fn check_pq(p: f64, q: f64) -> Result<()> {
    if !(0.0..1.0).contains(&p) {
        return Err(Error::domain(format!("p must lie in [0,1), got {p}")));
    }
    if !(q > 0.0 && q.is_finite()) {
        return Err(Error::domain(format!("q must be a positive real, got {q}")));
    }
    Ok(())
}

fn log_edge_odds(p: f64) -> f64 {
    p.ln() - (-p).ln_1p()
}

/// ln Z^RC_{p,q}(W, F) with `classes[v]` giving the off-graph wiring class of
/// each vertex: vertices sharing a class count as connected. `None` means no wiring.
pub fn rc_log_partition(g: &Graph, p: f64, q: f64, classes: Option<&[usize]>) -> Result<f64> {
    check_pq(p, q)?;
    let n = g.num_vertices();
    let rep: Vec<usize> = match classes {
        None => (0..n).collect(),
        Some(c) => {
            if c.len() != n {
                return Err(Error::invalid(format!(
                    "wiring has {} entries for {n} vertices",
                    c.len()
                )));
            }
            let mut ids: HashMap<usize, usize> = HashMap::new();
            c.iter()
                .map(|&k| {
                    let next = ids.len();
                    *ids.entry(k).or_insert(next)
                })
                .collect()
        }
    };
    let m = rep.iter().copied().max().map_or(0, |x| x + 1);
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v)| (rep[u], rep[v])).collect();
    Ok(log_rc_multigraph(m, &edges, log_edge_odds(p), q.ln()))
}

/// Z^RC_{p,q}(W, F) = Σ_ω q^{k(ω)} (p/(1−p))^{|η(ω)|}.
pub fn rc_partition(g: &Graph, p: f64, q: f64) -> Result<f64> {
    Ok(rc_log_partition(g, p, q, None)?.exp())
}

/// Z^RC with the given wiring classes.
pub fn rc_partition_wired(g: &Graph, p: f64, q: f64, classes: &[usize]) -> Result<f64> {
    Ok(rc_log_partition(g, p, q, Some(classes))?.exp())
}
