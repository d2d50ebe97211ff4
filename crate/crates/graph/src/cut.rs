use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::ball::{shortlex_key, BallGraph, VertexId};
use crate::error::GraphError;

/// A vertex set together with its edge boundary inside a window.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cut {
    /// Sorted vertex ids.
    pub side: Vec<VertexId>,
    /// `(inside, outside, multiplicity)`, sorted.
    pub boundary: Vec<(VertexId, VertexId, u32)>,
    /// Boundary multiplicity carried by wall edges.
    pub wall_weight: u32,
}

impl Cut {
    pub fn from_mask(ball: &BallGraph, inside: &[bool]) -> Cut {
        let side: Vec<VertexId> = (0..ball.len()).filter(|&v| inside[v]).collect();
        let mut boundary = Vec::new();
        let mut wall_weight = 0;
        for &u in &side {
            for &(v, m) in ball.neighbors(u) {
                if !inside[v] {
                    boundary.push((u, v, m));
                    if ball.is_wall_edge(u, v) {
                        wall_weight += m;
                    }
                }
            }
        }
        Cut {
            side,
            boundary,
            wall_weight,
        }
    }

    pub fn from_side(ball: &BallGraph, side: &[VertexId]) -> Cut {
        let mut mask = vec![false; ball.len()];
        for &v in side {
            mask[v] = true;
        }
        Cut::from_mask(ball, &mask)
    }

    /// |δC| counted with multiplicity.
    pub fn size(&self) -> u32 {
        self.boundary.iter().map(|&(_, _, m)| m).sum()
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.side {
            mask[v] = true;
        }
        mask
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.side.binary_search(&v).is_ok()
    }

    /// Both the side and its complement induce connected subgraphs.
    pub fn sides_connected(&self, ball: &BallGraph) -> bool {
        let mask = self.mask(ball.len());
        let comp: Vec<bool> = mask.iter().map(|b| !b).collect();
        ball.is_connected_on(&mask) && ball.is_connected_on(&comp)
    }

    /// Side labels sorted shortlex; the tie-break key between cuts.
    pub fn label_key(&self, ball: &BallGraph) -> Vec<String> {
        let mut labels: Vec<&str> = self.side.iter().map(|&v| ball.label(v)).collect();
        labels.sort_by(|a, b| shortlex_key(a).cmp(&shortlex_key(b)));
        labels.into_iter().map(str::to_string).collect()
    }

    /// Recomputes boundary and wall weight against a (possibly re-weighted)
    /// window with the same vertex set.
    pub fn reweigh(&self, ball: &BallGraph) -> Cut {
        Cut::from_side(ball, &self.side)
    }
}

/// Compares two label lists shortlex element-wise, shorter prefix first.
pub fn cmp_label_lists(a: &[String], b: &[String]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = shortlex_key(x).cmp(&shortlex_key(y));
        if o.is_ne() {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

struct FlowNet {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u64>,
}

impl FlowNet {
    fn new(n: usize) -> Self {
        FlowNet {
            head: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    /// Arc pair `u→v` (cap `c_uv`) and `v→u` (cap `c_vu`), stored at `2k`, `2k+1`.
    fn add(&mut self, u: usize, v: usize, c_uv: u64, c_vu: u64) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c_uv);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(c_vu);
    }

    fn augment(&mut self, s: usize, t: usize) -> Option<u64> {
        let n = self.head.len();
        let mut via = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &a in &self.head[u] {
                let v = self.to[a];
                if self.cap[a] > 0 && !seen[v] {
                    seen[v] = true;
                    via[v] = a;
                    queue.push_back(v);
                }
            }
        }
        if !seen[t] {
            return None;
        }
        let mut bottleneck = u64::MAX;
        let mut v = t;
        while v != s {
            let a = via[v];
            bottleneck = bottleneck.min(self.cap[a]);
            v = self.to[a ^ 1];
        }
        let mut v = t;
        while v != s {
            let a = via[v];
            self.cap[a] -= bottleneck;
            self.cap[a ^ 1] += bottleneck;
            v = self.to[a ^ 1];
        }
        Some(bottleneck)
    }

    /// Vertices reachable from `starts` along arcs with residual capacity
    /// (`forward`), or that reach `starts` (`!forward`).
    fn reach(&self, starts: &[usize], forward: bool, stop: &[bool]) -> Vec<bool> {
        let n = self.head.len();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for &s in starts {
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &a in &self.head[u] {
                let v = self.to[a];
                let open = if forward { self.cap[a] > 0 } else { self.cap[a ^ 1] > 0 };
                if open && !seen[v] && !stop[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}

/// Minimum edge cut separating `sources` from `sinks`, counted with
/// multiplicity. Among all minimum cuts the source side whose shortlex-sorted
/// label list is lexicographically least is returned.
pub fn min_vertex_set_cut(
    ball: &BallGraph,
    sources: &[VertexId],
    sinks: &[VertexId],
) -> Result<Cut, GraphError> {
    let n = ball.len();
    if sources.is_empty() || sinks.is_empty() {
        return Err(GraphError::Invalid("sources and sinks must be nonempty".into()));
    }
    let mut is_source = vec![false; n];
    let mut is_sink = vec![false; n];
    for &s in sources {
        if s >= n {
            return Err(GraphError::Invalid(format!("source {s} out of range")));
        }
        is_source[s] = true;
    }
    for &t in sinks {
        if t >= n {
            return Err(GraphError::Invalid(format!("sink {t} out of range")));
        }
        if is_source[t] {
            return Err(GraphError::Invalid(format!(
                "vertex {} is both source and sink",
                ball.label(t)
            )));
        }
        is_sink[t] = true;
    }

    let (ss, tt) = (n, n + 1);
    let mut net = FlowNet::new(n + 2);
    for (u, v, m) in ball.edges() {
        net.add(u, v, m as u64, m as u64);
    }
    let inf = u64::MAX / 4;
    for s in 0..n {
        if is_source[s] {
            net.add(ss, s, inf, 0);
        }
        if is_sink[s] {
            net.add(s, tt, inf, 0);
        }
    }
    let mut flow = 0u64;
    while let Some(f) = net.augment(ss, tt) {
        flow += f;
    }
    if flow == 0 {
        return Err(GraphError::Disconnected);
    }

    let none = vec![false; n + 2];
    let src_side = net.reach(&[ss], true, &none);
    let sink_side = net.reach(&[tt], false, &none);

    // Lex-least closed set: walk free vertices in label order and take the
    // residual closure of each one whenever that is consistent.
    let mut included: Vec<bool> = src_side[..n].to_vec();
    let mut excluded: Vec<bool> = sink_side[..n].to_vec();
    let key = |v: usize| shortlex_key(ball.label(v));
    let mut free: Vec<VertexId> = (0..n).filter(|&v| !included[v] && !excluded[v]).collect();
    free.sort_by(|&a, &b| key(a).cmp(&key(b)));
    let mut top = (0..n).filter(|&v| included[v]).max_by(|&a, &b| key(a).cmp(&key(b)));
    let mut stop = included.clone();
    stop.extend([true, true]);
    for v in free {
        match top {
            Some(t) if key(v) < key(t) => {}
            _ => break,
        }
        if included[v] || excluded[v] {
            continue;
        }
        let closure = net.reach(&[v], true, &stop);
        let members: Vec<usize> = (0..n).filter(|&w| closure[w]).collect();
        if members.iter().any(|&w| excluded[w]) {
            excluded[v] = true;
            continue;
        }
        for w in members {
            included[w] = true;
            stop[w] = true;
            if key(w) > key(top.unwrap()) {
                top = Some(w);
            }
        }
    }

    let cut = Cut::from_mask(ball, &included);
    debug_assert_eq!(cut.size() as u64, flow);
    Ok(cut)
}
