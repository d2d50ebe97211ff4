use std::collections::{HashMap, VecDeque};

use hst_graph::{BallGraph, VertexId};
use hst_pocset::{cube, wallspace_pocset, CubeSkeleton, Pocset};
use serde::Serialize;

use crate::cut::HalfspaceCut;
use crate::error::ChopError;

/// Elements of the halfspace stabilizer acting on a finite window. Element
/// `g` moves window vertex `v` to `apply(g, v)`, or out of the window.
pub trait WindowAction {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn name(&self, g: usize) -> String;

    fn apply(&self, g: usize, v: VertexId) -> Option<VertexId>;
}

/// A translate `g·δ` of the cut boundary that lies inside the window.
#[derive(Clone, Debug, Serialize)]
pub struct Translate {
    /// The first listed element producing this translate.
    pub element: String,
    /// Sorted `(inside, outside)` boundary edges.
    pub edges: Vec<(VertexId, VertexId)>,
    /// `g·C` inside the window.
    pub side: Vec<VertexId>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassInfo {
    /// Vertex of the edge tree this class is the fiber of.
    pub tree_vertex: usize,
    pub size: usize,
    /// Shortlex-least member.
    pub representative: VertexId,
    /// Reaches the frontier at a point more than one step from the wall.
    pub deep: bool,
}

/// Points of the window grouped by the translates separating them.
#[derive(Clone, Debug, Serialize)]
pub struct ClassMap {
    pub class_of: Vec<usize>,
    pub classes: Vec<ClassInfo>,
}

impl ClassMap {
    pub fn deep(&self) -> Vec<usize> {
        (0..self.classes.len()).filter(|&c| self.classes[c].deep).collect()
    }

    pub fn members(&self, class: usize) -> Vec<VertexId> {
        (0..self.class_of.len()).filter(|&v| self.class_of[v] == class).collect()
    }

    /// Image of a class under an element, read off from any member that
    /// stays in the window.
    pub fn act<A: WindowAction>(&self, action: &A, g: usize, class: usize) -> Option<usize> {
        (0..self.class_of.len())
            .filter(|&v| self.class_of[v] == class)
            .find_map(|v| action.apply(g, v))
            .map(|w| self.class_of[w])
    }

    /// Vertex sets that are not contained in a single class, by index.
    pub fn split_sets(&self, sets: &[Vec<VertexId>]) -> Vec<usize> {
        sets.iter()
            .enumerate()
            .filter(|(_, s)| s.windows(2).any(|w| self.class_of[w[0]] != self.class_of[w[1]]))
            .map(|(i, _)| i)
            .collect()
    }
}

/// Witness that the stabilizer has no fixed point on the edge tree:
/// `inner·D ⊊ outer·D`, so `outer⁻¹·inner` translates along an axis.
#[derive(Clone, Debug, Serialize)]
pub struct TranslationWitness {
    pub inner: String,
    pub outer: String,
    /// `D` is the complement of the cut side rather than the side.
    pub complement: bool,
}

/// The translate pocset, its cubing and the induced classes.
#[derive(Clone, Debug, Serialize)]
pub struct EdgeTree {
    pub translates: Vec<Translate>,
    /// Translates leaving the window or failing to separate it.
    pub skipped: usize,
    #[serde(skip)]
    pub pocset: Pocset,
    #[serde(skip)]
    pub tree: CubeSkeleton,
    /// Tree vertex of every window point.
    pub lambda: Vec<usize>,
    pub classes: ClassMap,
    /// Listed elements fixing the cut boundary (identity included).
    pub boundary_stabilizer: Vec<String>,
    pub witness: Option<TranslationWitness>,
}

impl EdgeTree {
    pub fn tree_degrees(&self) -> Vec<usize> {
        self.tree.adjacency().iter().map(Vec::len).collect()
    }

    pub fn dot(&self) -> String {
        hst_pocset::io::cube_to_dot(&self.pocset, &self.tree)
    }
}

fn side_of(window: &BallGraph, edges: &[(VertexId, VertexId)]) -> Option<Vec<VertexId>> {
    let n = window.len();
    let cut: std::collections::HashSet<(VertexId, VertexId)> =
        edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
    let mut seen = vec![false; n];
    let mut queue: VecDeque<VertexId> = VecDeque::new();
    for &(u, _) in edges {
        if !seen[u] {
            seen[u] = true;
            queue.push_back(u);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &(y, _) in window.neighbors(x) {
            if !seen[y] && !cut.contains(&(x, y)) {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    if edges.iter().any(|&(_, v)| seen[v]) {
        return None;
    }
    Some((0..n).filter(|&v| seen[v]).collect())
}

/// Distance of every vertex to the wall inside the window (`u32::MAX` when
/// unreachable or no wall is marked).
pub fn wall_distance(window: &BallGraph) -> Vec<u32> {
    let mut d = vec![u32::MAX; window.len()];
    let mut queue: VecDeque<VertexId> = window.wall_vertices().into_iter().collect();
    for &v in &queue {
        d[v] = 0;
    }
    while let Some(x) = queue.pop_front() {
        for &(y, _) in window.neighbors(x) {
            if d[y] == u32::MAX {
                d[y] = d[x] + 1;
                queue.push_back(y);
            }
        }
    }
    d
}

/// Translates the cut boundary by every listed element, keeps the
/// translates that lie in the window and separate it, and cubes the
/// resulting wallspace. A transverse pair of translates is an error (the cut
/// is not nested at this scale); otherwise the cubing must be a tree.
pub fn build_edge_tree<A: WindowAction>(
    window: &BallGraph,
    cut: &HalfspaceCut,
    action: &A,
    budget: Option<usize>,
) -> Result<EdgeTree, ChopError> {
    let base: Vec<(VertexId, VertexId)> = cut.cut.boundary.iter().map(|&(u, v, _)| (u, v)).collect();
    if base.is_empty() {
        return Err(ChopError::Invalid("cut has an empty boundary".into()));
    }
    let mut translates = vec![Translate {
        element: "1".into(),
        edges: sorted(&base),
        side: cut.cut.side.clone(),
    }];
    let mut seen: HashMap<Vec<(VertexId, VertexId)>, usize> = HashMap::from([(undirected(&base), 0)]);
    let mut boundary_stabilizer = vec!["1".to_string()];
    let mut skipped = 0;
    for g in 0..action.len() {
        let moved: Option<Vec<(VertexId, VertexId)>> =
            base.iter().map(|&(u, v)| Some((action.apply(g, u)?, action.apply(g, v)?))).collect();
        let Some(moved) = moved else {
            skipped += 1;
            continue;
        };
        let key = undirected(&moved);
        if let Some(&i) = seen.get(&key) {
            if i == 0 && !boundary_stabilizer.contains(&action.name(g)) {
                boundary_stabilizer.push(action.name(g));
            }
            continue;
        }
        let Some(side) = side_of(window, &moved) else {
            skipped += 1;
            continue;
        };
        seen.insert(key, translates.len());
        translates.push(Translate { element: action.name(g), edges: sorted(&moved), side });
    }

    let labels: Vec<String> = window.labels().to_vec();
    let sets: Vec<Vec<VertexId>> = translates.iter().map(|t| t.side.clone()).collect();
    let (pocset, lambda_u) = wallspace_pocset(&labels, &sets, true)?;
    let crossing = pocset.transverse_pairs();
    if let Some(&(a, b)) = crossing.first() {
        return Err(ChopError::NotNested(format!(
            "{} transverse pairs, first between the translates by {} and {}",
            crossing.len(),
            translates[a / 2].element,
            translates[b / 2].element
        )));
    }
    let tree = cube(&pocset, budget)?;
    if !tree.is_tree() {
        return Err(ChopError::Structure("cubing of a nested pocset is not a tree".into()));
    }
    let lambda: Vec<usize> = lambda_u
        .iter()
        .map(|u| tree.index_of(u).ok_or_else(|| ChopError::Structure("point ultrafilter missing from the cubing".into())))
        .collect::<Result<_, _>>()?;

    let classes = classes_from(window, &lambda);
    let witness = find_witness(&pocset, &translates);
    Ok(EdgeTree { translates, skipped, pocset, tree, lambda, classes, boundary_stabilizer, witness })
}

fn sorted(edges: &[(VertexId, VertexId)]) -> Vec<(VertexId, VertexId)> {
    let mut e = edges.to_vec();
    e.sort_unstable();
    e
}

fn undirected(edges: &[(VertexId, VertexId)]) -> Vec<(VertexId, VertexId)> {
    let mut e: Vec<_> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    e.sort_unstable();
    e
}

fn classes_from(window: &BallGraph, lambda: &[usize]) -> ClassMap {
    let radius = window.radius();
    let to_wall = wall_distance(window);
    let mut order: Vec<VertexId> = (0..window.len()).collect();
    order.sort_by_key(|&v| hst_graph::shortlex_key(window.label(v)));
    let mut ids: HashMap<usize, usize> = HashMap::new();
    let mut classes: Vec<ClassInfo> = Vec::new();
    for &v in &order {
        let t = lambda[v];
        let next = classes.len();
        let c = *ids.entry(t).or_insert(next);
        if c == next {
            classes.push(ClassInfo { tree_vertex: t, size: 0, representative: v, deep: false });
        }
        classes[c].size += 1;
        if window.dist(v) == radius && to_wall[v] > 1 && to_wall[v] != u32::MAX {
            classes[c].deep = true;
        }
    }
    let class_of = lambda.iter().map(|t| ids[t]).collect();
    ClassMap { class_of, classes }
}

/// Looks for translates `g·D ⊊ h·D`, preferring `h = 1`.
fn find_witness(pocset: &Pocset, translates: &[Translate]) -> Option<TranslationWitness> {
    let k = translates.len();
    let mut best: Option<(bool, TranslationWitness)> = None;
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            for complement in [false, true] {
                let (a, b) = (2 * i + usize::from(complement), 2 * j + usize::from(complement));
                if pocset.lt(a, b) {
                    let w = TranslationWitness {
                        inner: translates[i].element.clone(),
                        outer: translates[j].element.clone(),
                        complement,
                    };
                    if j == 0 {
                        return Some(w);
                    }
                    if best.is_none() {
                        best = Some((false, w));
                    }
                }
            }
        }
    }
    best.map(|(_, w)| w)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Comb: a wall line `(i, 0)` for `|i| ≤ r` with a tooth `(i, j)` above
    /// every point, inside the ball of radius `r` around `(0, 0)`.
    pub(crate) fn comb(r: i32) -> (BallGraph, HashMap<(i32, i32), VertexId>) {
        let mut ids = HashMap::new();
        let mut labels = Vec::new();
        let mut dist = Vec::new();
        let mut wall = Vec::new();
        for i in -r..=r {
            for j in 0..=(r - i.abs()) {
                ids.insert((i, j), labels.len());
                labels.push(format!("{i},{j}"));
                dist.push((i.abs() + j) as u32);
                wall.push(j == 0);
            }
        }
        let mut edges = Vec::new();
        for (&(i, j), &v) in &ids {
            if let Some(&w) = ids.get(&(i + 1, j)).filter(|_| j == 0) {
                edges.push((v, w, 1));
            }
            if let Some(&w) = ids.get(&(i, j + 1)) {
                edges.push((v, w, 1));
            }
        }
        let mut g = BallGraph::from_edges(labels, dist, r as u32, &edges).unwrap();
        g.set_wall(wall).unwrap();
        (g, ids)
    }

    struct Shift<'a> {
        ids: &'a HashMap<(i32, i32), VertexId>,
        coords: Vec<(i32, i32)>,
        steps: Vec<i32>,
    }

    impl WindowAction for Shift<'_> {
        fn len(&self) -> usize {
            self.steps.len()
        }
        fn name(&self, g: usize) -> String {
            format!("s^{}", self.steps[g])
        }
        fn apply(&self, g: usize, v: VertexId) -> Option<VertexId> {
            let (i, j) = self.coords[v];
            self.ids.get(&(i + self.steps[g], j)).copied()
        }
    }

    #[test]
    fn comb_edge_tree_is_a_segment() {
        let r = 5;
        let (g, ids) = comb(r);
        let mut coords = vec![(0, 0); g.len()];
        for (&c, &v) in &ids {
            coords[v] = c;
        }
        let action = Shift { ids: &ids, coords, steps: (-2 * r..=2 * r).filter(|&s| s != 0).collect() };
        // C = everything with i ≤ 0, cut across the wall edge (0,0)-(1,0).
        let side: Vec<VertexId> = (0..g.len()).filter(|&v| action.coords[v].0 <= 0).collect();
        let cut = HalfspaceCut::new(&g, hst_graph::Cut::from_side(&g, &side));
        assert_eq!(cut.size, 1);
        let t = build_edge_tree(&g, &cut, &action, None).unwrap();
        // Wall edges (i,0)-(i+1,0) for -r ≤ i < r.
        assert_eq!(t.translates.len(), 2 * r as usize);
        assert_eq!(t.tree.len(), 2 * r as usize + 1);
        let degrees = t.tree_degrees();
        assert_eq!(degrees.iter().filter(|&&d| d == 1).count(), 2);
        assert!(degrees.iter().all(|&d| d <= 2));
        // One class per tooth; deep iff the tooth reaches the frontier
        // more than one step above the wall.
        assert_eq!(t.classes.classes.len(), 2 * r as usize + 1);
        assert_eq!(t.classes.deep().len(), 2 * (r as usize - 2) + 1);
        assert_eq!(t.boundary_stabilizer, ["1"]);
        assert!(t.witness.is_some());
    }
}
