use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use hst_graph::VertexId;
use hst_splitting::{coset_reps, GElem, HalfSide, HalfspaceBall, Piece, Side, Splitting, TreeEdge, TreeVertex};
use serde::Serialize;

use crate::classes::{ClassMap, WindowAction};
use crate::error::ChopError;
use crate::order::{ChopGeometry, Half};

/// A finite subtree of the Bass–Serre tree around the base edge, every edge
/// oriented so that its positive half is the matching translate of the
/// chopped halfspace.
#[derive(Clone, Debug)]
pub struct TreeWindow {
    pub side: HalfSide,
    pub edges: Vec<TreeEdge>,
    /// Edge-hop distance from the base edge.
    pub hops: Vec<usize>,
    pub vertices: Vec<TreeVertex>,
    /// `(positive end, negative end)` of every edge.
    pub ends: Vec<(usize, usize)>,
    pub labels: Vec<String>,
    /// Window vertices in the positive half of each edge.
    positive: Vec<FixedBitSet>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeWindowSummary {
    pub edges: usize,
    pub vertices: usize,
    pub max_hops: usize,
}

impl TreeWindow {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn summary(&self) -> TreeWindowSummary {
        TreeWindowSummary {
            edges: self.edges.len(),
            vertices: self.vertices.len(),
            max_hops: self.hops.iter().copied().max().unwrap_or(0),
        }
    }

    /// Window vertices in a half.
    pub fn half_set(&self, h: Half) -> FixedBitSet {
        let mut s = self.positive[h.edge].clone();
        if !h.positive {
            s.toggle_range(..);
        }
        s
    }

    pub fn contains(&self, h: Half, vertex: usize) -> bool {
        self.positive[h.edge].contains(vertex) == h.positive
    }

    pub fn nested(&self, a: Half, b: Half) -> bool {
        a.edge != b.edge && self.half_set(a).is_subset(&self.half_set(b))
    }

    pub fn index_of(&self, e: &TreeEdge) -> Option<usize> {
        self.edges.iter().position(|x| x == e)
    }
}

/// Edges `h·x·e₀` at vertex `v`, `x` running over coset representatives of
/// the edge group of length at most `rep_radius`.
fn incident(split: &Splitting, v: &TreeVertex, rep_radius: usize) -> Result<Vec<TreeEdge>, ChopError> {
    let mut out = Vec::new();
    let sides: &[(Side, bool)] = if split.is_hnn() {
        &[(Side::Left, false), (Side::Right, true)]
    } else {
        match v.side {
            Side::Left => &[(Side::Left, false)],
            Side::Right => &[(Side::Right, false)],
        }
    };
    for &(side, down) in sides {
        let group = split.vertex_group(side);
        for x in coset_reps(group, split.engine(side), rep_radius)? {
            let mut g = split.mul(&v.rep, &split.vertex_elem(side, &x)?)?;
            if down {
                split.push(&mut g, &Piece::Stable { inverse: true })?;
            }
            out.push(split.edge_of(&g)?);
        }
    }
    Ok(out)
}

/// Breadth-first window of the tree: every edge within `tree_radius` hops of
/// the base edge reachable through coset representatives of length at most
/// `rep_radius`.
pub fn tree_window(split: &Splitting, side: HalfSide, tree_radius: usize, rep_radius: usize) -> Result<TreeWindow, ChopError> {
    let base = split.base_edge();
    let mut edges = vec![base.clone()];
    let mut hops = vec![0];
    let mut edge_ids: HashMap<TreeEdge, usize> = HashMap::from([(base, 0)]);
    let mut vertices: Vec<TreeVertex> = Vec::new();
    let mut vertex_ids: HashMap<TreeVertex, usize> = HashMap::new();
    let mut raw_ends = Vec::new();
    let mut expanded: HashMap<usize, ()> = HashMap::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(e) = queue.pop_front() {
        let (near, far) = split.edge_ends(&edges[e])?;
        let mut pair = [0; 2];
        for (k, v) in [near, far].into_iter().enumerate() {
            let next = vertices.len();
            let id = *vertex_ids.entry(v.clone()).or_insert(next);
            if id == next {
                vertices.push(v.clone());
            }
            pair[k] = id;
            if hops[e] >= tree_radius || expanded.insert(id, ()).is_some() {
                continue;
            }
            for f in incident(split, &v, rep_radius)? {
                if !edge_ids.contains_key(&f) {
                    edge_ids.insert(f.clone(), edges.len());
                    edges.push(f);
                    hops.push(hops[e] + 1);
                    queue.push_back(edges.len() - 1);
                }
            }
        }
        raw_ends.push((e, pair[0], pair[1]));
    }
    raw_ends.sort_unstable();
    let ends: Vec<(usize, usize)> = raw_ends
        .iter()
        .map(|&(_, near, far)| match side {
            HalfSide::Left => (near, far),
            HalfSide::Right => (far, near),
        })
        .collect();

    let n = vertices.len();
    let mut adj = vec![Vec::new(); n];
    for (e, &(a, b)) in ends.iter().enumerate() {
        adj[a].push((b, e));
        adj[b].push((a, e));
    }
    if ends.len() + 1 != n {
        return Err(ChopError::Structure(format!("tree window has {} edges on {n} vertices", ends.len())));
    }
    let positive = (0..ends.len())
        .map(|e| {
            let mut seen = FixedBitSet::with_capacity(n);
            let mut stack = vec![ends[e].0];
            seen.insert(ends[e].0);
            while let Some(v) = stack.pop() {
                for &(w, f) in &adj[v] {
                    if f != e && !seen.put(w) {
                        stack.push(w);
                    }
                }
            }
            seen
        })
        .collect();
    let labels = edges.iter().map(|e| split.edge_label(e)).collect();
    Ok(TreeWindow { side, edges, hops, vertices, ends, labels, positive })
}

/// Points of the halfspace window by element.
pub fn point_index(ball: &HalfspaceBall) -> HashMap<GElem, VertexId> {
    ball.points.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect()
}

/// Elements of the halfspace stabilizer acting on a halfspace window by left
/// multiplication.
pub struct WallAction<'a> {
    split: &'a Splitting,
    ball: &'a HalfspaceBall,
    index: &'a HashMap<GElem, VertexId>,
    elements: Vec<GElem>,
    names: Vec<String>,
}

impl<'a> WallAction<'a> {
    /// Every nontrivial stabilizer element carrying some anchor vertex to a
    /// window point, shortlex sorted. With the endpoints of a cut boundary
    /// as anchors this reaches every translate of the boundary that meets
    /// the window.
    pub fn covering(
        split: &'a Splitting,
        ball: &'a HalfspaceBall,
        index: &'a HashMap<GElem, VertexId>,
        anchors: &[VertexId],
    ) -> Result<Self, ChopError> {
        let mut found: HashMap<GElem, ()> = HashMap::new();
        for &u in anchors {
            let back = split.inv(&ball.points[u])?;
            for w in &ball.points {
                let g = split.mul(w, &back)?;
                if split.in_edge_group(&g) && !split.is_identity(&g) {
                    found.insert(g, ());
                }
            }
        }
        let mut named: Vec<(String, GElem)> = found.into_keys().map(|g| (split.label(&g), g)).collect();
        named.sort_by(|a, b| hst_graph::shortlex_key(&a.0).cmp(&hst_graph::shortlex_key(&b.0)));
        let (names, elements) = named.into_iter().unzip();
        Ok(WallAction { split, ball, index, elements, names })
    }

    pub fn element(&self, g: usize) -> &GElem {
        &self.elements[g]
    }

    /// `d · v` for an arbitrary element.
    pub fn apply_elem(&self, d: &GElem, v: VertexId) -> Option<VertexId> {
        let y = self.split.mul(d, &self.ball.points[v]).ok()?;
        self.index.get(&y).copied()
    }
}

impl WindowAction for WallAction<'_> {
    fn len(&self) -> usize {
        self.elements.len()
    }

    fn name(&self, g: usize) -> String {
        self.names[g].clone()
    }

    fn apply(&self, g: usize, v: VertexId) -> Option<VertexId> {
        self.apply_elem(self.element(g), v)
    }
}

/// The tree window together with the classes of the chopped halfspace,
/// transported to every edge by its representative.
pub struct SplitGeometry<'a> {
    pub split: &'a Splitting,
    pub tree: &'a TreeWindow,
    pub ball: &'a HalfspaceBall,
    pub index: &'a HashMap<GElem, VertexId>,
    pub classes: &'a ClassMap,
    deep: Vec<usize>,
}

impl<'a> SplitGeometry<'a> {
    pub fn new(
        split: &'a Splitting,
        tree: &'a TreeWindow,
        ball: &'a HalfspaceBall,
        index: &'a HashMap<GElem, VertexId>,
        classes: &'a ClassMap,
    ) -> Self {
        SplitGeometry { split, tree, ball, index, classes, deep: classes.deep() }
    }

    /// `rep_frame⁻¹ · rep_other · w`.
    fn relative(&self, frame: usize, other: usize, w: &GElem) -> Result<GElem, ChopError> {
        let s = self.split;
        let rel = s.mul(&s.inv(&self.tree.edges[frame].rep)?, &self.tree.edges[other].rep)?;
        Ok(s.mul(&rel, w)?)
    }

    pub fn class_of_point(&self, g: &GElem) -> Option<usize> {
        self.index.get(g).map(|&v| self.classes.class_of[v])
    }

    /// Image of a class under an element stabilizing the chopped halfspace.
    pub fn act_on_class(&self, d: &GElem, class: usize) -> Option<usize> {
        let (_, w) = self
            .classes
            .members(class)
            .into_iter()
            .find_map(|v| {
                let y = self.split.mul(d, &self.ball.points[v]).ok()?;
                self.index.get(&y).map(|&w| (v, w))
            })?;
        Some(self.classes.class_of[w])
    }

    /// Pairs `(frame, other)` of orbit edges where the wall of `other` lies
    /// in the positive half of `frame`.
    pub fn framed_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.tree.len();
        let mut out = Vec::new();
        for f in 0..n {
            for e in 0..n {
                if f == e {
                    continue;
                }
                let plus = Half { edge: f, positive: true };
                let (a, b) = self.tree.ends[e];
                if self.tree.contains(plus, a) && self.tree.contains(plus, b) {
                    out.push((f, e));
                }
            }
        }
        out
    }

    /// Window points of the wall of `other` seen from `frame`: wall points
    /// within `reach` of the base point, transported.
    pub fn transported_wall(&self, frame: usize, other: usize, reach: u32) -> Result<Vec<VertexId>, ChopError> {
        let mut out = Vec::new();
        for &v in self.ball.wall.iter().filter(|&&v| self.ball.graph.dist(v) <= reach) {
            if let Some(&w) = self.index.get(&self.relative(frame, other, &self.ball.points[v])?) {
                out.push(w);
            }
        }
        Ok(out)
    }

    /// Framed pairs whose transported wall is split by `key`, or misses the
    /// window entirely. `frames` restricts the frames looked at.
    pub fn split_walls<K: PartialEq>(
        &self,
        reach: u32,
        frames: Option<usize>,
        key: impl Fn(VertexId) -> K,
    ) -> Result<Vec<(String, String)>, ChopError> {
        let mut bad = Vec::new();
        for (f, e) in self.framed_pairs() {
            if frames.is_some_and(|only| only != f) {
                continue;
            }
            let pts = self.transported_wall(f, e, reach)?;
            let whole = pts.first().is_some_and(|&p| pts.iter().all(|&q| key(q) == key(p)));
            if !whole {
                bad.push((self.tree.labels[f].clone(), self.tree.labels[e].clone()));
            }
        }
        Ok(bad)
    }
}

impl ChopGeometry for SplitGeometry<'_> {
    fn edge_count(&self) -> usize {
        self.tree.len()
    }

    fn in_orbit(&self, _edge: usize) -> bool {
        true
    }

    fn nested(&self, a: Half, b: Half) -> bool {
        self.tree.nested(a, b)
    }

    fn class_of_edge(&self, frame: usize, other: usize) -> Result<usize, ChopError> {
        let p = self.relative(frame, other, &self.split.identity())?;
        self.class_of_point(&p).ok_or_else(|| {
            ChopError::Window(format!(
                "the wall of {} seen from {} falls outside the halfspace window at {}",
                self.tree.labels[other],
                self.tree.labels[frame],
                self.split.label(&p)
            ))
        })
    }

    fn deep_classes(&self) -> Vec<usize> {
        self.deep.clone()
    }

    fn edge_label(&self, edge: usize) -> String {
        self.tree.labels[edge].clone()
    }
}
