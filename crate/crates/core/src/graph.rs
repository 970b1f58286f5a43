//! Finite graphs, hypercubic regions and boundary conditions.
//!
//! A [`Region`] stores the graph Λ⁺ = (V⁺, E) with the interior vertices V
//! numbered first (row-major over the box for box regions) and the boundary
//! ∂Λ = V⁺ \ V after them. Every edge of E has at least one interior endpoint.
//! A plain finite graph is a region with an empty boundary.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::config::VertexConfig;
use crate::error::{Error, Result};

/// Default cap on |V⁺| for lattice regions.
pub const DEFAULT_MAX_REGION_VERTICES: usize = 1 << 22;

/// A finite simple graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a graph on vertices `0..n`, rejecting loops, repeated edges and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::new();
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge {i} = ({u},{v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("edge {i} is a loop at {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::invalid(format!("edge ({u},{v}) appears twice")));
            }
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        Ok(Graph { n, edges, adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::new(n, edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|v| (v - 1, v)).collect();
        Graph::new(n, edges).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid("a cycle needs at least 3 vertices"));
        }
        let edges = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Graph::new(n, edges)
    }

    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// `(neighbor, edge index)` pairs incident to `x`.
    #[inline]
    pub fn neighbors(&self, x: usize) -> &[(usize, usize)] {
        &self.adj[x]
    }

    #[inline]
    pub fn degree(&self, x: usize) -> usize {
        self.adj[x].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &(y, _) in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Parses the plain-text edge list format: one `u v` pair per line.
    ///
    /// Blank lines and `#` comments are ignored. A `vertices N` line declares
    /// the vertex count (needed for isolated vertices); otherwise it is one
    /// more than the largest endpoint.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut declared = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::invalid(format!("line {}: cannot parse {raw:?}", lineno + 1));
            match fields.as_slice() {
                ["vertices", n] => declared = Some(n.parse::<usize>().map_err(|_| bad())?),
                [u, v] => edges.push((
                    u.parse::<usize>().map_err(|_| bad())?,
                    v.parse::<usize>().map_err(|_| bad())?,
                )),
                _ => return Err(bad()),
            }
        }
        let implied = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        let n = match declared {
            Some(n) if n < implied => {
                return Err(Error::invalid(format!(
                    "declared {n} vertices but an edge uses vertex {}",
                    implied - 1
                )))
            }
            Some(n) => n,
            None => implied,
        };
        Graph::new(n, edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("vertices {}\n", self.n);
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// How a region was built; determines which boundary presets apply.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionKind {
    /// An abstract finite graph, no boundary.
    Graph,
    /// The box ∏[lo_i, hi_i] of ℤ^d.
    Box { lo: Vec<i64>, hi: Vec<i64> },
    /// An arbitrary finite set of lattice sites.
    Sites,
    /// The box [-n, n]^d with opposite faces identified; no boundary.
    Periodic { radius: i64 },
}

/// A region Λ = (V, E) together with its closure graph Λ⁺.
#[derive(Clone, Debug)]
pub struct Region {
    graph: Graph,
    interior: usize,
    dim: usize,
    coords: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    kind: RegionKind,
}

/// Region for the box [-n, n]^d.
pub fn build_box(d: usize, n: i64) -> Result<Region> {
    Region::centered_box(d, n)
}

impl Region {
    pub fn centered_box(d: usize, n: i64) -> Result<Region> {
        if n < 0 {
            return Err(Error::invalid("box radius must be nonnegative"));
        }
        Self::box_between(&vec![-n; d], &vec![n; d], DEFAULT_MAX_REGION_VERTICES)
    }

    /// Region for the box ∏[lo_i, hi_i], failing if |V⁺| would exceed `limit`.
    pub fn box_between(lo: &[i64], hi: &[i64], limit: usize) -> Result<Region> {
        let d = lo.len();
        if d == 0 || hi.len() != d {
            return Err(Error::invalid("box corners must have the same positive dimension"));
        }
        if lo.iter().zip(hi).any(|(a, b)| a > b) {
            return Err(Error::invalid("box has lo > hi in some coordinate"));
        }
        let sides: Vec<u128> = lo.iter().zip(hi).map(|(a, b)| (b - a + 1) as u128).collect();
        let interior: u128 = sides.iter().product();
        let faces: u128 = (0..d)
            .map(|i| 2 * sides.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, s)| s).product::<u128>())
            .sum();
        if interior + faces > limit as u128 {
            return Err(Error::Capacity {
                what: "box region vertices",
                needed: interior + faces,
                limit: limit as u128,
            });
        }
        let mut sites = Vec::with_capacity(interior as usize);
        let mut cur = lo.to_vec();
        loop {
            sites.push(cur.clone());
            // Row-major: last coordinate fastest.
            let mut i = d;
            loop {
                if i == 0 {
                    let mut region = Self::from_sites_unchecked(d, sites);
                    region.kind = RegionKind::Box {
                        lo: lo.to_vec(),
                        hi: hi.to_vec(),
                    };
                    return Ok(region);
                }
                i -= 1;
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = lo[i];
            }
        }
    }

    /// Region whose interior is an arbitrary finite set of lattice sites.
    pub fn from_sites(d: usize, sites: Vec<Vec<i64>>) -> Result<Region> {
        if d == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        let mut seen = std::collections::HashSet::new();
        for s in &sites {
            if s.len() != d {
                return Err(Error::invalid("site has wrong dimension"));
            }
            if !seen.insert(s.clone()) {
                return Err(Error::invalid(format!("site {s:?} listed twice")));
            }
        }
        Ok(Self::from_sites_unchecked(d, sites))
    }

    fn from_sites_unchecked(d: usize, sites: Vec<Vec<i64>>) -> Region {
        let mut index: HashMap<Vec<i64>, usize> = sites
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let interior = sites.len();
        let mut coords = sites;

        // Boundary: lattice neighbours of V outside V, in lexicographic order.
        let mut boundary = std::collections::BTreeSet::new();
        for x in coords.iter() {
            for i in 0..d {
                for step in [-1, 1] {
                    let mut y = x.clone();
                    y[i] += step;
                    if !index.contains_key(&y) {
                        boundary.insert(y);
                    }
                }
            }
        }
        for y in boundary {
            index.insert(y.clone(), coords.len());
            coords.push(y);
        }

        // Interior-interior edges once via the + direction, then edges to ∂Λ.
        let mut edges = Vec::new();
        for (xi, x) in coords[..interior].iter().enumerate() {
            for i in 0..d {
                for step in [1, -1] {
                    let mut y = x.clone();
                    y[i] += step;
                    let yi = index[&y];
                    if yi >= interior || step == 1 {
                        edges.push((xi, yi));
                    }
                }
            }
        }
        let graph = Graph::new(coords.len(), edges).expect("lattice region is simple");
        Region {
            graph,
            interior,
            dim: d,
            coords,
            index,
            kind: RegionKind::Sites,
        }
    }

    /// The torus obtained from [-n, n]^d by identifying opposite faces.
    pub fn periodic_box(d: usize, n: i64) -> Result<Region> {
        if d == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        if n < 1 {
            return Err(Error::invalid(
                "periodic box needs radius >= 1 (side 3) to avoid loops and multi-edges",
            ));
        }
        let side = 2 * n + 1;
        let count = (side as u128).pow(d as u32);
        if count > DEFAULT_MAX_REGION_VERTICES as u128 {
            return Err(Error::Capacity {
                what: "periodic box vertices",
                needed: count,
                limit: DEFAULT_MAX_REGION_VERTICES as u128,
            });
        }
        let base = Self::box_between(&vec![-n; d], &vec![n; d], usize::MAX)?;
        let coords: Vec<Vec<i64>> = base.coords[..base.interior].to_vec();
        let index: HashMap<Vec<i64>, usize> =
            coords.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let wrap = |v: i64| ((v + n).rem_euclid(side)) - n;
        let mut edges = Vec::new();
        for (xi, x) in coords.iter().enumerate() {
            for i in 0..d {
                let mut y = x.clone();
                y[i] = wrap(y[i] + 1);
                edges.push((xi, index[&y]));
            }
        }
        let graph = Graph::new(coords.len(), edges)?;
        Ok(Region {
            interior: coords.len(),
            graph,
            dim: d,
            coords,
            index,
            kind: RegionKind::Periodic { radius: n },
        })
    }

    /// A finite graph viewed as a region with empty boundary.
    pub fn from_graph(graph: Graph) -> Region {
        Region {
            interior: graph.num_vertices(),
            graph,
            dim: 0,
            coords: Vec::new(),
            index: HashMap::new(),
            kind: RegionKind::Graph,
        }
    }

    /// The graph Λ⁺ = (V⁺, E).
    #[inline]
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    #[inline]
    pub fn kind(&self) -> &RegionKind {
        &self.kind
    }

    /// Lattice dimension, 0 for abstract graphs.
    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// |V|.
    #[inline]
    pub fn interior_len(&self) -> usize {
        self.interior
    }

    /// |∂Λ|.
    #[inline]
    pub fn boundary_len(&self) -> usize {
        self.graph.num_vertices() - self.interior
    }

    /// |V⁺|.
    #[inline]
    pub fn closure_len(&self) -> usize {
        self.graph.num_vertices()
    }

    #[inline]
    pub fn is_boundary(&self, v: usize) -> bool {
        v >= self.interior
    }

    pub fn boundary_vertices(&self) -> std::ops::Range<usize> {
        self.interior..self.graph.num_vertices()
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.kind, RegionKind::Periodic { .. })
    }

    /// Lattice coordinates of vertex `v`, if this is a lattice region.
    pub fn coords(&self, v: usize) -> Option<&[i64]> {
        self.coords.get(v).map(Vec::as_slice)
    }

    pub fn index_of(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    /// The vertex at the lattice origin if it is interior, else vertex 0.
    pub fn origin(&self) -> usize {
        if self.dim > 0 {
            if let Some(i) = self.index_of(&vec![0; self.dim]) {
                if i < self.interior {
                    return i;
                }
            }
        }
        0
    }

    /// The lattice degree δ = 2d, or the maximum degree of an abstract graph.
    pub fn degree_bound(&self) -> usize {
        if self.dim > 0 {
            2 * self.dim
        } else {
            self.graph.max_degree()
        }
    }

    /// Λ⁻: the edges with both endpoints interior, as a graph on V.
    pub fn inner_graph(&self) -> Graph {
        let edges = self
            .graph
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| u < self.interior && v < self.interior)
            .collect();
        Graph::new(self.interior, edges).expect("subgraph of a simple graph is simple")
    }
}

/// External configuration λ = (κ, ρ) seen by a region.
///
/// `Custom` lists κ for each boundary vertex (in the region's boundary order)
/// and the off-region wiring induced by ρ as a class label per boundary vertex:
/// open boundary vertices with equal labels are connected outside Λ⁺.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryCondition {
    /// All external vertices and edges closed (free).
    Zero,
    /// All external vertices and edges open: ∂Λ open and wired into one class.
    One,
    /// Only valid for periodic boxes, which have no boundary.
    Periodic,
    Custom { kappa: Vec<bool>, wiring: Vec<usize> },
}

/// A boundary condition resolved against a specific region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedBoundary {
    /// κ for each boundary vertex.
    pub open: Vec<bool>,
    /// Wiring class per boundary vertex; closed vertices sit in singleton classes.
    pub class: Vec<usize>,
}

impl ResolvedBoundary {
    pub fn num_open(&self) -> usize {
        self.open.iter().filter(|&&b| b).count()
    }
}

impl BoundaryCondition {
    pub fn resolve(&self, region: &Region) -> Result<ResolvedBoundary> {
        let nb = region.boundary_len();
        match self {
            BoundaryCondition::Zero => Ok(ResolvedBoundary {
                open: vec![false; nb],
                class: (0..nb).collect(),
            }),
            BoundaryCondition::One => Ok(ResolvedBoundary {
                open: vec![true; nb],
                class: vec![0; nb],
            }),
            BoundaryCondition::Periodic => {
                if region.is_periodic() {
                    Ok(ResolvedBoundary {
                        open: Vec::new(),
                        class: Vec::new(),
                    })
                } else {
                    Err(Error::Unsupported(
                        "periodic boundary only applies to periodic boxes".into(),
                    ))
                }
            }
            BoundaryCondition::Custom { kappa, wiring } => {
                if kappa.len() != nb || wiring.len() != nb {
                    return Err(Error::invalid(format!(
                        "boundary condition has {} / {} entries, region boundary has {nb}",
                        kappa.len(),
                        wiring.len()
                    )));
                }
                let mut members: HashMap<usize, usize> = HashMap::new();
                for &w in wiring {
                    *members.entry(w).or_default() += 1;
                }
                for (i, (&open, &w)) in kappa.iter().zip(wiring).enumerate() {
                    if !open && members[&w] > 1 {
                        return Err(Error::invalid(format!(
                            "closed boundary vertex {i} is wired to another vertex"
                        )));
                    }
                }
                Ok(ResolvedBoundary {
                    open: kappa.clone(),
                    class: wiring.clone(),
                })
            }
        }
    }

    /// λ₁ ≤ λ₂: κ₁ ≤ κ₂ pointwise and every wiring of λ₁ is present in λ₂.
    pub fn is_below(&self, other: &Self, region: &Region) -> Result<bool> {
        let a = self.resolve(region)?;
        let b = other.resolve(region)?;
        let n = a.open.len();
        for i in 0..n {
            if a.open[i] && !b.open[i] {
                return Ok(false);
            }
            for j in i + 1..n {
                if a.open[i] && a.open[j] && a.class[i] == a.class[j] && b.class[i] != b.class[j] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Spin boundary for the BCP side: `Free` puts spin 0 on ∂Λ, `Fixed(s)` puts spin s.
///
/// `Fixed(0)` is accepted and means free.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpinBoundary {
    Free,
    Fixed(u8),
}

impl SpinBoundary {
    /// Spin carried by every boundary vertex.
    pub fn spin(&self) -> u8 {
        match *self {
            SpinBoundary::Free => 0,
            SpinBoundary::Fixed(s) => s,
        }
    }

    pub fn is_free(&self) -> bool {
        self.spin() == 0
    }

    /// The DRC boundary condition paired with this spin boundary by the coupling.
    pub fn drc_boundary(&self) -> BoundaryCondition {
        if self.is_free() {
            BoundaryCondition::Zero
        } else {
            BoundaryCondition::One
        }
    }
}

/// The subgraph Λ(ψ) of Λ⁺ induced by the open vertices, with index maps back
/// into the region.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// Region vertex index of each subgraph vertex.
    pub vertices: Vec<usize>,
    /// Region edge index of each subgraph edge.
    pub edges: Vec<usize>,
}

/// Open-vertex indicator over V⁺ for interior state `psi` and boundary `bc`.
pub(crate) fn open_closure(region: &Region, psi: VertexConfig, bc: &ResolvedBoundary) -> Vec<bool> {
    let mut open = Vec::with_capacity(region.closure_len());
    open.extend((0..region.interior_len()).map(|i| psi.get(i)));
    open.extend(bc.open.iter().copied());
    open
}

/// Λ(ψ): open vertices of V⁺ and the edges E_ψ joining two of them.
pub fn induced_open_subgraph(
    region: &Region,
    psi: VertexConfig,
    bc: &BoundaryCondition,
) -> Result<InducedSubgraph> {
    if psi.len() != region.interior_len() {
        return Err(Error::invalid(format!(
            "ψ has {} entries, region has {} interior vertices",
            psi.len(),
            region.interior_len()
        )));
    }
    let bc = bc.resolve(region)?;
    let open = open_closure(region, psi, &bc);
    let mut relabel = vec![usize::MAX; open.len()];
    let mut vertices = Vec::new();
    for (v, &o) in open.iter().enumerate() {
        if o {
            relabel[v] = vertices.len();
            vertices.push(v);
        }
    }
    let mut edges = Vec::new();
    let mut sub_edges = Vec::new();
    for (e, &(u, v)) in region.graph().edges().iter().enumerate() {
        if open[u] && open[v] {
            edges.push(e);
            sub_edges.push((relabel[u], relabel[v]));
        }
    }
    Ok(InducedSubgraph {
        graph: Graph::new(vertices.len(), sub_edges)?,
        vertices,
        edges,
    })
}
