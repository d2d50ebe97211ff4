use std::collections::HashMap;
use std::hash::Hash;

use rayon::prelude::*;

use crate::error::GraphError;

pub type VertexId = usize;

/// Environment variable overriding the default vertex budget.
pub const BUDGET_ENV: &str = "HST_VERTEX_BUDGET";
pub const DEFAULT_BUDGET: usize = 2_000_000;

/// Layers smaller than this are expanded on the calling thread.
const PAR_LAYER_MIN: usize = 256;

pub fn default_budget() -> usize {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// A locally finite graph given by a neighbor function.
///
/// `neighbors` must be symmetric: `w` appears in `neighbors(v)` exactly as
/// often as `v` appears in `neighbors(w)`. Repeats encode edge multiplicity.
pub trait NeighborOracle: Sync {
    type Vertex: Clone + Eq + Hash + Send + Sync;

    fn label(&self, v: &Self::Vertex) -> String;
    fn neighbors(&self, v: &Self::Vertex) -> Result<Vec<Self::Vertex>, GraphError>;
}

/// Shortlex key on label strings.
pub fn shortlex_key(label: &str) -> (usize, &str) {
    (label.chars().count(), label)
}

pub fn shortlex_cmp(a: &str, b: &str) -> std::cmp::Ordering {
    shortlex_key(a).cmp(&shortlex_key(b))
}

/// Finite induced window onto a locally finite graph.
///
/// Every vertex carries its distance from the window centre; the frontier is
/// the set of vertices at distance exactly `radius`. Edges carry a positive
/// multiplicity. Vertices may be marked as wall vertices; an edge is a wall
/// edge when both endpoints are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallGraph {
    labels: Vec<String>,
    dist: Vec<u32>,
    adj: Vec<Vec<(VertexId, u32)>>,
    wall: Vec<bool>,
    radius: u32,
    index: HashMap<String, VertexId>,
}

impl BallGraph {
    /// Builds a window from explicit parts. Parallel edges are merged by
    /// summing multiplicities.
    pub fn from_edges(
        labels: Vec<String>,
        dist: Vec<u32>,
        radius: u32,
        edges: &[(VertexId, VertexId, u32)],
    ) -> Result<Self, GraphError> {
        let n = labels.len();
        if dist.len() != n {
            return Err(GraphError::Invalid(format!(
                "{} labels but {} distances",
                n,
                dist.len()
            )));
        }
        if let Some(d) = dist.iter().find(|&&d| d > radius) {
            return Err(GraphError::Invalid(format!(
                "distance {d} exceeds radius {radius}"
            )));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(GraphError::Invalid(format!("duplicate label {l:?}")));
            }
        }
        let mut adj: Vec<Vec<(VertexId, u32)>> = vec![Vec::new(); n];
        for &(u, v, m) in edges {
            if u >= n || v >= n {
                return Err(GraphError::Invalid(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(GraphError::Invalid(format!("self-loop at {u}")));
            }
            if m == 0 {
                continue;
            }
            adj[u].push((v, m));
            adj[v].push((u, m));
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup_by(|later, kept| {
                if later.0 == kept.0 {
                    kept.1 += later.1;
                    true
                } else {
                    false
                }
            });
        }
        Ok(BallGraph {
            labels,
            dist,
            adj,
            wall: vec![false; n],
            radius,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn id_of(&self, label: &str) -> Option<VertexId> {
        self.index.get(label).copied()
    }

    pub fn dist(&self, v: VertexId) -> u32 {
        self.dist[v]
    }

    pub fn distances(&self) -> &[u32] {
        &self.dist
    }

    pub fn is_frontier(&self, v: VertexId) -> bool {
        self.dist[v] == self.radius
    }

    pub fn frontier(&self) -> Vec<VertexId> {
        (0..self.len()).filter(|&v| self.is_frontier(v)).collect()
    }

    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, u32)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> u32 {
        self.adj[v].iter().map(|&(_, m)| m).sum()
    }

    /// Edge list with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId, u32)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| {
                list.iter()
                    .filter(move |&&(v, _)| u < v)
                    .map(move |&(v, m)| (u, v, m))
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> u32 {
        self.adj[u]
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.adj[u][i].1)
            .unwrap_or(0)
    }

    pub fn is_wall(&self, v: VertexId) -> bool {
        self.wall[v]
    }

    pub fn wall_vertices(&self) -> Vec<VertexId> {
        (0..self.len()).filter(|&v| self.wall[v]).collect()
    }

    pub fn is_wall_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.wall[u] && self.wall[v]
    }

    pub fn set_wall(&mut self, wall: Vec<bool>) -> Result<(), GraphError> {
        if wall.len() != self.len() {
            return Err(GraphError::Invalid("wall mask length mismatch".into()));
        }
        self.wall = wall;
        Ok(())
    }

    /// Multiplies the multiplicity of every wall edge by `n`.
    pub fn scale_wall_edges(&self, n: u32) -> BallGraph {
        let mut out = self.clone();
        for u in 0..out.len() {
            for e in out.adj[u].iter_mut() {
                if self.wall[u] && self.wall[e.0] {
                    e.1 *= n;
                }
            }
        }
        out
    }

    /// Induced sub-window on `keep`, preserving distances, radius and wall
    /// marks. Returns the new graph and the old id of every new vertex.
    pub fn induced(&self, keep: &[bool]) -> (BallGraph, Vec<VertexId>) {
        let old: Vec<VertexId> = (0..self.len()).filter(|&v| keep[v]).collect();
        let mut new_id = vec![usize::MAX; self.len()];
        for (i, &v) in old.iter().enumerate() {
            new_id[v] = i;
        }
        let labels = old.iter().map(|&v| self.labels[v].clone()).collect();
        let dist = old.iter().map(|&v| self.dist[v]).collect();
        let mut edges = Vec::new();
        for &(u, v, m) in &self.edges() {
            if keep[u] && keep[v] {
                edges.push((new_id[u], new_id[v], m));
            }
        }
        let mut g = BallGraph::from_edges(labels, dist, self.radius, &edges)
            .expect("induced window of a valid window is valid");
        g.wall = old.iter().map(|&v| self.wall[v]).collect();
        (g, old)
    }

    /// Connected components of the subgraph induced on `mask`, each sorted,
    /// listed in order of their least vertex id.
    pub fn components_of(&self, mask: &[bool]) -> Vec<Vec<VertexId>> {
        let mut comp = vec![usize::MAX; self.len()];
        let mut out: Vec<Vec<VertexId>> = Vec::new();
        for s in 0..self.len() {
            if !mask[s] || comp[s] != usize::MAX {
                continue;
            }
            let c = out.len();
            let mut members = vec![s];
            comp[s] = c;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for &(v, _) in &self.adj[u] {
                    if mask[v] && comp[v] == usize::MAX {
                        comp[v] = c;
                        members.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected_on(&self, mask: &[bool]) -> bool {
        self.components_of(mask).len() <= 1
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_on(&vec![true; self.len()])
    }

    /// Checks the window invariants; `complete` gives, for each vertex, the
    /// true degree in the ambient graph (used to verify neighbor-completeness
    /// off the frontier).
    pub fn check_invariants(&self, complete: Option<&[u32]>) -> Result<(), GraphError> {
        for u in 0..self.len() {
            for &(v, m) in &self.adj[u] {
                if u == v || m == 0 || self.multiplicity(v, u) != m {
                    return Err(GraphError::Invalid(format!("asymmetric edge {u}-{v}")));
                }
            }
            if let Some(deg) = complete {
                if !self.is_frontier(u) && self.degree(u) != deg[u] {
                    return Err(GraphError::Invalid(format!(
                        "interior vertex {} misses neighbors",
                        self.labels[u]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Result of [`grow_ball`]: the window plus the oracle vertex behind each id.
#[derive(Clone, Debug)]
pub struct GrownBall<V> {
    pub graph: BallGraph,
    pub points: Vec<V>,
}

impl<V: Clone + Eq + Hash> GrownBall<V> {
    pub fn id_of_point(&self, p: &V) -> Option<VertexId> {
        self.points.iter().position(|q| q == p)
    }
}

/// BFS ball of the given radius around `center`, induced (edges between
/// frontier vertices included). Vertex ids follow BFS discovery order, which
/// is determined by the oracle's neighbor order.
pub fn grow_ball<O: NeighborOracle>(
    oracle: &O,
    center: &O::Vertex,
    radius: u32,
    budget: Option<usize>,
) -> Result<GrownBall<O::Vertex>, GraphError> {
    let limit = budget.unwrap_or_else(default_budget);
    let mut ids: HashMap<O::Vertex, VertexId> = HashMap::new();
    let mut points = vec![center.clone()];
    let mut dist = vec![0u32];
    ids.insert(center.clone(), 0);
    let mut edges: Vec<(VertexId, VertexId, u32)> = Vec::new();
    let mut layer_start = 0;
    let mut d = 0u32;
    loop {
        let layer_end = points.len();
        let layer = &points[layer_start..layer_end];
        let nbrs: Vec<Result<Vec<O::Vertex>, GraphError>> = if layer.len() >= PAR_LAYER_MIN {
            layer.par_iter().map(|v| oracle.neighbors(v)).collect()
        } else {
            layer.iter().map(|v| oracle.neighbors(v)).collect()
        };
        for (offset, list) in nbrs.into_iter().enumerate() {
            let u = layer_start + offset;
            for w in list? {
                match ids.get(&w) {
                    Some(&v) => {
                        if v > u {
                            edges.push((u, v, 1));
                        }
                    }
                    None if d < radius => {
                        let v = points.len();
                        if v >= limit {
                            return Err(GraphError::Budget {
                                limit,
                                reached: v + 1,
                            });
                        }
                        ids.insert(w.clone(), v);
                        points.push(w);
                        dist.push(d + 1);
                        edges.push((u, v, 1));
                    }
                    None => {}
                }
            }
        }
        if d == radius {
            break;
        }
        layer_start = layer_end;
        d += 1;
    }
    let labels: Vec<String> = points.iter().map(|p| oracle.label(p)).collect();
    let graph = BallGraph::from_edges(labels, dist, radius, &edges)?;
    Ok(GrownBall { graph, points })
}
