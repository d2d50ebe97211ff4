use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use hst_graph::BallGraph;

use crate::error::PocsetError;
use crate::pocset::{max_clique, Pocset};

/// Default cap on the number of ultrafilters [`cube`] enumerates.
pub const DEFAULT_CUBE_BUDGET: usize = 100_000;

/// A choice of one element from every pair, closed upwards.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ultrafilter {
    chosen: FixedBitSet,
}

impl Ultrafilter {
    pub fn from_bits(chosen: FixedBitSet) -> Self {
        Ultrafilter { chosen }
    }

    pub fn contains(&self, a: usize) -> bool {
        self.chosen.contains(a)
    }

    pub fn chosen(&self) -> Vec<usize> {
        self.chosen.ones().collect()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.chosen
    }

    /// Checks completeness and upward closure against `pocset`.
    pub fn is_valid_for(&self, pocset: &Pocset) -> bool {
        (0..pocset.len()).all(|a| {
            self.contains(a) != self.contains(pocset.star(a))
                && (!self.contains(a) || pocset.above(a).is_subset(&self.chosen))
        })
    }

    /// Number of pairs on which the two choices differ.
    pub fn distance(&self, other: &Ultrafilter) -> usize {
        self.chosen.symmetric_difference_count(&other.chosen) / 2
    }

    /// Canonical order: characteristic vectors compared element by element,
    /// absent before present.
    pub fn canonical_cmp(&self, other: &Ultrafilter) -> Ordering {
        let (a, b) = (self.chosen.as_slice(), other.chosen.as_slice());
        for (x, y) in a.iter().zip(b) {
            let diff = x ^ y;
            if diff != 0 {
                let bit = diff & diff.wrapping_neg();
                return if y & bit != 0 { Ordering::Less } else { Ordering::Greater };
            }
        }
        a.len().cmp(&b.len())
    }
}

/// Vertices and edges of the cubing of a finite pocset.
#[derive(Clone, Debug)]
pub struct CubeSkeleton {
    pub vertices: Vec<Ultrafilter>,
    /// `(u, v, a)` with `u < v` whose choices differ exactly on the pair of
    /// representative `a`.
    pub edges: Vec<(usize, usize, usize)>,
    /// Width of the pocset, when it could be computed.
    pub dimension: Option<usize>,
    pub window: bool,
}

/// Enumerates every ultrafilter of `pocset` (all are DCC since the pocset is
/// finite) in canonical order and joins those differing in a single pair.
pub fn cube(pocset: &Pocset, budget: Option<usize>) -> Result<CubeSkeleton, PocsetError> {
    let limit = budget.unwrap_or(DEFAULT_CUBE_BUDGET);
    let n = pocset.len();
    let mut found = Vec::new();
    let mut stack = vec![FixedBitSet::with_capacity(n)];
    while let Some(chosen) = stack.pop() {
        let next = (0..n).find(|&a| !chosen.contains(a) && !chosen.contains(pocset.star(a)));
        let Some(a) = next else {
            if found.len() == limit {
                return Err(PocsetError::Budget { limit });
            }
            found.push(Ultrafilter { chosen });
            continue;
        };
        for pick in [pocset.star(a), a] {
            if let Some(grown) = choose(pocset, &chosen, pick) {
                stack.push(grown);
            }
        }
    }
    found.sort_by(|a, b| a.canonical_cmp(b));
    let index: HashMap<&FixedBitSet, usize> = found.iter().enumerate().map(|(i, u)| (&u.chosen, i)).collect();
    let mut edges = Vec::new();
    for (i, u) in found.iter().enumerate() {
        for a in pocset.pairs() {
            let mut flipped = u.chosen.clone();
            flipped.toggle(a);
            flipped.toggle(pocset.star(a));
            if let Some(&j) = index.get(&flipped) {
                if i < j {
                    edges.push((i, j, a));
                }
            }
        }
    }
    edges.sort_unstable();
    Ok(CubeSkeleton { vertices: found, edges, dimension: pocset.width().ok(), window: pocset.is_window() })
}

/// Adds `a` and everything above it, or `None` on a clash with a chosen
/// complement.
fn choose(pocset: &Pocset, chosen: &FixedBitSet, a: usize) -> Option<FixedBitSet> {
    if chosen.contains(pocset.star(a)) {
        return None;
    }
    let mut out = chosen.clone();
    out.insert(a);
    out.union_with(pocset.above(a));
    for b in pocset.above(a).ones() {
        if out.contains(pocset.star(b)) {
            return None;
        }
    }
    Some(out)
}

impl CubeSkeleton {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, u: &Ultrafilter) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.canonical_cmp(u)).ok()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.len()];
        for &(u, v, _) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let adj = self.adjacency();
        let mut dist = vec![None; self.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(dist[u].unwrap() + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.is_empty() || self.distances_from(0).iter().all(Option::is_some)
    }

    /// Connected and acyclic.
    pub fn is_tree(&self) -> bool {
        !self.is_empty() && self.edges.len() + 1 == self.len() && self.is_connected()
    }

    /// Largest `k` such that some vertex spans a `k`-cube: `k` pairs flippable
    /// there with every two flips together also landing on a vertex.
    pub fn cube_dimension(&self) -> usize {
        let mut best = usize::from(!self.edges.is_empty());
        let index: HashMap<&FixedBitSet, usize> =
            self.vertices.iter().enumerate().map(|(i, u)| (&u.chosen, i)).collect();
        let mut flips: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.len()];
        for &(u, v, a) in &self.edges {
            flips[u].push((a, v));
            flips[v].push((a, u));
        }
        for (u, local) in flips.iter().enumerate() {
            if local.len() <= best {
                continue;
            }
            let k = local.len().min(31);
            let mut adj = vec![0u32; k];
            for i in 0..k {
                for j in i + 1..k {
                    let mut both = self.vertices[local[i].1].chosen.clone();
                    both.symmetric_difference_with(&self.vertices[u].chosen);
                    both.symmetric_difference_with(&self.vertices[local[j].1].chosen);
                    if index.contains_key(&both) {
                        adj[i] |= 1 << j;
                        adj[j] |= 1 << i;
                    }
                }
            }
            best = best.max(max_clique(&adj, 0, (1u32 << k) - 1));
        }
        best
    }

    /// Whether every triple of vertices has exactly one median. Cubic in the
    /// number of vertices.
    pub fn is_median(&self) -> bool {
        let dist: Vec<Vec<usize>> = (0..self.len())
            .map(|s| self.distances_from(s).into_iter().map(|d| d.unwrap_or(usize::MAX)).collect())
            .collect();
        let n = self.len();
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    let medians = (0..n)
                        .filter(|&m| {
                            dist[a][m] + dist[m][b] == dist[a][b]
                                && dist[b][m] + dist[m][c] == dist[b][c]
                                && dist[a][m] + dist[m][c] == dist[a][c]
                        })
                        .count();
                    if medians != 1 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The skeleton as a graph window centred at vertex 0, labelled `v0, v1, …`.
    pub fn to_graph(&self) -> Result<BallGraph, PocsetError> {
        let dist: Vec<u32> = self.distances_from(0).into_iter().map(|d| d.unwrap_or(0) as u32).collect();
        let radius = dist.iter().copied().max().unwrap_or(0);
        let labels = (0..self.len()).map(|i| format!("v{i}")).collect();
        let edges: Vec<(usize, usize, u32)> = self.edges.iter().map(|&(u, v, _)| (u, v, 1)).collect();
        Ok(BallGraph::from_edges(labels, dist, radius, &edges)?)
    }
}

/// `true` iff the skeleton is a tree.
pub fn is_tree_check(skeleton: &CubeSkeleton) -> bool {
    skeleton.is_tree()
}
