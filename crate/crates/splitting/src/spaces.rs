use std::collections::HashMap;

use hst_graph::{BallGraph, VertexId};
use serde::Serialize;

use crate::cayley::cayley_window;
use crate::error::SplitError;
use crate::spec::{GElem, Piece, Side, Splitting};
use crate::tree::{TreeEdge, TreeVertex};

/// Which piece of the graph of spaces a point lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SpaceKind {
    Vertex(Side),
    Edge,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TreeNode {
    Vertex(TreeVertex),
    Midpoint(TreeEdge),
}

/// Finite window of a tree of spaces built from Cayley graphs of the vertex
/// and edge groups: every group element `g` contributes one point per vertex
/// orbit and one per edge orbit. Points `(g, V)` are joined along vertex-group
/// generators and the images of edge-group generators, points `(g, E)` along
/// edge-group generators, and `(g, E)` is joined to the two ends of `g·e₀`.
#[derive(Clone, Debug)]
pub struct TreeOfSpaces {
    pub graph: BallGraph,
    pub points: Vec<(GElem, SpaceKind)>,
    /// Visible vertices of the barycentric subdivision of the tree.
    pub nodes: Vec<TreeNode>,
    /// Subdivided tree edges between `nodes`.
    pub tree_edges: Vec<(usize, usize)>,
    /// `p` on window points, as indices into `nodes`.
    pub projection: Vec<usize>,
    /// Preimage of each node.
    pub fibers: Vec<Vec<VertexId>>,
    /// Preimage of each visible edge midpoint.
    pub walls: Vec<(usize, Vec<VertexId>)>,
    pub disconnected_vertex_preimages: usize,
    pub disconnected_walls: usize,
    /// Every window edge maps to a node or to an edge of the subdivided tree.
    pub simplicial: bool,
}

impl TreeOfSpaces {
    pub fn tree_is_tree(&self) -> bool {
        let n = self.nodes.len();
        if n == 0 || self.tree_edges.len() + 1 != n {
            return false;
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        let edges: Vec<(usize, usize, u32)> = self.tree_edges.iter().map(|&(a, b)| (a, b, 1)).collect();
        BallGraph::from_edges(labels, vec![0; n], 0, &edges).is_ok_and(|g| g.is_connected())
    }

    /// Numbers of vertex and wall preimages of this window that stay
    /// disconnected inside the corresponding preimages of `larger`, a window
    /// of the same space with a bigger radius. Distorted subgroups get cut by
    /// the ball; this tells truncation apart from real disconnection up to
    /// the larger scale.
    pub fn disconnected_in(&self, larger: &TreeOfSpaces) -> (usize, usize) {
        let fibers: HashMap<&TreeNode, &Vec<VertexId>> =
            larger.nodes.iter().zip(&larger.fibers).collect();
        let mut out = (0, 0);
        for (node, fiber) in self.nodes.iter().zip(&self.fibers) {
            let joined = fibers.get(node).is_some_and(|big| {
                let mut mask = vec![false; larger.graph.len()];
                for &v in big.iter() {
                    mask[v] = true;
                }
                let comps = larger.graph.components_of(&mask);
                let ids: Option<Vec<VertexId>> =
                    fiber.iter().map(|&v| larger.graph.id_of(self.graph.label(v))).collect();
                ids.is_some_and(|ids| comps.iter().any(|c| ids.iter().all(|u| c.contains(u))))
            });
            if !joined {
                match node {
                    TreeNode::Vertex(_) => out.0 += 1,
                    TreeNode::Midpoint(_) => out.1 += 1,
                }
            }
        }
        out
    }

    pub fn wall_windows(&self) -> Vec<BallGraph> {
        self.walls
            .iter()
            .map(|(_, vs)| {
                let mut mask = vec![false; self.graph.len()];
                for &v in vs {
                    mask[v] = true;
                }
                self.graph.induced(&mask).0
            })
            .collect()
    }
}

struct Interner<T> {
    items: Vec<T>,
    ids: HashMap<T, usize>,
}

impl<T: Clone + Eq + std::hash::Hash> Interner<T> {
    fn new() -> Self {
        Interner { items: Vec::new(), ids: HashMap::new() }
    }

    fn id(&mut self, x: T) -> usize {
        if let Some(&i) = self.ids.get(&x) {
            return i;
        }
        self.items.push(x.clone());
        self.ids.insert(x, self.items.len() - 1);
        self.items.len() - 1
    }
}

pub fn tree_of_spaces(split: &Splitting, radius: u32, budget: Option<usize>) -> Result<TreeOfSpaces, SplitError> {
    if radius < 2 {
        return Err(SplitError::Invalid("tree of spaces needs radius at least 2".into()));
    }
    let ball = cayley_window(split, &split.identity(), radius, budget)?;
    if split.is_trivial() && !split.is_hnn() {
        return Ok(collapsed(split, ball));
    }
    let elems = &ball.points;
    let index: HashMap<&GElem, usize> = elems.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let kinds: Vec<SpaceKind> = if split.is_hnn() {
        vec![SpaceKind::Vertex(Side::Left), SpaceKind::Edge]
    } else {
        vec![SpaceKind::Vertex(Side::Left), SpaceKind::Vertex(Side::Right), SpaceKind::Edge]
    };
    let k = kinds.len();
    let id = |g: usize, kind: usize| g * k + kind;
    let mut points = Vec::with_capacity(elems.len() * k);
    let mut labels = Vec::with_capacity(elems.len() * k);
    let mut dist = Vec::with_capacity(elems.len() * k);
    for (i, g) in elems.iter().enumerate() {
        for kind in &kinds {
            let suffix = match kind {
                SpaceKind::Vertex(Side::Left) => "A",
                SpaceKind::Vertex(Side::Right) => "B",
                SpaceKind::Edge => "C",
            };
            points.push((g.clone(), *kind));
            labels.push(format!("{}@{}", split.label(g), suffix));
            dist.push(ball.graph.dist(i));
        }
    }

    let mut edges = Vec::new();
    let link = |g: &GElem, by: &GElem| -> Result<Option<usize>, SplitError> {
        Ok(index.get(&split.mul(g, by)?).copied())
    };
    let vertex_gens: Vec<(usize, Vec<GElem>)> = kinds
        .iter()
        .enumerate()
        .filter_map(|(ki, kind)| match kind {
            SpaceKind::Vertex(side) => Some((ki, *side)),
            SpaceKind::Edge => None,
        })
        .map(|(ki, side)| {
            let grp = split.vertex_group(side);
            let mut gens = grp
                .generators()
                .iter()
                .chain(split.inclusion(side).images())
                .map(|x| split.vertex_elem(side, x))
                .collect::<Result<Vec<_>, _>>()?;
            gens.sort();
            gens.dedup();
            Ok((ki, gens))
        })
        .collect::<Result<_, SplitError>>()?;
    let edge_gens: Vec<GElem> = split
        .edge_group()
        .generators()
        .iter()
        .map(|c| split.edge_elem(c))
        .collect();
    let edge_kind = k - 1;
    let mut stable = split.identity();
    if split.is_hnn() {
        split.push(&mut stable, &Piece::Stable { inverse: false })?;
    }
    for (i, g) in elems.iter().enumerate() {
        for (ki, gens) in &vertex_gens {
            for s in gens {
                if let Some(j) = link(g, s)? {
                    edges.push((id(i, *ki), id(j, *ki), 1));
                }
            }
        }
        for c in &edge_gens {
            if let Some(j) = link(g, c)? {
                edges.push((id(i, edge_kind), id(j, edge_kind), 1));
            }
        }
        edges.push((id(i, 0), id(i, edge_kind), 1));
        if split.is_hnn() {
            if let Some(j) = link(g, &stable)? {
                edges.push((id(i, edge_kind), id(j, 0), 1));
            }
        } else {
            edges.push((id(i, edge_kind), id(i, 1), 1));
        }
    }
    let graph = BallGraph::from_edges(labels, dist, radius, &edges)?;

    let mut nodes = Interner::new();
    let mut projection = Vec::with_capacity(points.len());
    let mut tree_edges = Vec::new();
    for (g, kind) in &points {
        let node = match kind {
            SpaceKind::Vertex(side) => nodes.id(TreeNode::Vertex(split.vertex_of(g, *side))),
            SpaceKind::Edge => {
                let e = split.edge_of(g)?;
                let (a, b) = split.edge_ends(&e)?;
                let m = nodes.id(TreeNode::Midpoint(e));
                let a = nodes.id(TreeNode::Vertex(a));
                let b = nodes.id(TreeNode::Vertex(b));
                tree_edges.push((a.min(m), a.max(m)));
                tree_edges.push((b.min(m), b.max(m)));
                m
            }
        };
        projection.push(node);
    }
    tree_edges.sort_unstable();
    tree_edges.dedup();

    let mut adjacent = std::collections::HashSet::new();
    for &(a, b) in &tree_edges {
        adjacent.insert((a, b));
        adjacent.insert((b, a));
    }
    let simplicial = graph.edges().iter().all(|&(u, v, _)| {
        let (a, b) = (projection[u], projection[v]);
        a == b || adjacent.contains(&(a, b))
    });

    let mut fibers: Vec<Vec<VertexId>> = vec![Vec::new(); nodes.items.len()];
    for (v, &n) in projection.iter().enumerate() {
        fibers[n].push(v);
    }
    let mut disconnected_vertex_preimages = 0;
    let mut disconnected_walls = 0;
    let mut walls = Vec::new();
    for (n, fiber) in fibers.iter().enumerate() {
        if fiber.is_empty() {
            continue;
        }
        let mut mask = vec![false; graph.len()];
        for &v in fiber {
            mask[v] = true;
        }
        let ok = graph.is_connected_on(&mask);
        match nodes.items[n] {
            TreeNode::Vertex(_) => disconnected_vertex_preimages += usize::from(!ok),
            TreeNode::Midpoint(_) => {
                disconnected_walls += usize::from(!ok);
                walls.push((n, fiber.clone()));
            }
        }
    }
    Ok(TreeOfSpaces {
        graph,
        points,
        nodes: nodes.items,
        fibers,
        tree_edges,
        projection,
        walls,
        disconnected_vertex_preimages,
        disconnected_walls,
        simplicial,
    })
}

/// A trivial amalgam fixes a vertex: the whole window maps there.
fn collapsed(split: &Splitting, ball: hst_graph::GrownBall<GElem>) -> TreeOfSpaces {
    let fixed = if split.inclusion(Side::Right).is_onto() { Side::Left } else { Side::Right };
    let n = ball.points.len();
    TreeOfSpaces {
        points: ball.points.into_iter().map(|g| (g, SpaceKind::Vertex(fixed))).collect(),
        graph: ball.graph,
        nodes: vec![TreeNode::Vertex(TreeVertex { side: fixed, rep: split.identity() })],
        fibers: vec![(0..n).collect()],
        tree_edges: Vec::new(),
        projection: vec![0; n],
        walls: Vec::new(),
        disconnected_vertex_preimages: 0,
        disconnected_walls: 0,
        simplicial: true,
    }
}
