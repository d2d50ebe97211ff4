use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use hst_graph::{BallGraph, VertexId};
use rand::Rng;

use crate::cube::Ultrafilter;
use crate::error::PocsetError;
use crate::pocset::{from_sets, Pocset};

fn require_tree(tree: &BallGraph) -> Result<(), PocsetError> {
    if tree.is_empty() {
        return Err(PocsetError::NotATree("no vertices".into()));
    }
    if !tree.is_connected() {
        return Err(PocsetError::NotATree("disconnected".into()));
    }
    if tree.edges().iter().any(|&(_, _, m)| m != 1) || tree.edge_count() + 1 != tree.len() {
        return Err(PocsetError::NotATree("has a cycle".into()));
    }
    Ok(())
}

/// Halfspaces of a finite tree: for the `i`-th edge `{u, v}` (in
/// [`BallGraph::edges`] order), element `2i` is the side containing `u`,
/// named `u|v`, and `2i+1` the side containing `v`. Also returns the
/// ultrafilter of halfspaces containing each vertex.
pub fn tree_halfspace_pocset(tree: &BallGraph) -> Result<(Pocset, Vec<Ultrafilter>), PocsetError> {
    require_tree(tree)?;
    let n = tree.len();
    let mut names = Vec::new();
    let mut sides = Vec::new();
    for (u, v, _) in tree.edges() {
        let mut side = FixedBitSet::with_capacity(n);
        side.insert(u);
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for &(y, _) in tree.neighbors(x) {
                if !(x == u && y == v) && !side.contains(y) {
                    side.insert(y);
                    queue.push_back(y);
                }
            }
        }
        names.push(format!("{}|{}", tree.label(u), tree.label(v)));
        names.push(format!("{}|{}", tree.label(v), tree.label(u)));
        sides.push(side);
    }
    let pocset = from_sets(names, &sides, n, false)?;
    Ok((pocset, principal(&sides, n)))
}

/// `λ(x) = {A : x ∈ A}` for the pocset built by `from_sets`.
pub(crate) fn principal(sets: &[FixedBitSet], points: usize) -> Vec<Ultrafilter> {
    (0..points)
        .map(|x| {
            let mut chosen = FixedBitSet::with_capacity(2 * sets.len());
            for (i, s) in sets.iter().enumerate() {
                chosen.insert(if s.contains(x) { 2 * i } else { 2 * i + 1 });
            }
            Ultrafilter::from_bits(chosen)
        })
        .collect()
}

/// Canonical code of an unlabelled tree: the least rooted code over its
/// centres, where a rooted code is `(` + sorted child codes + `)`. Two trees
/// are isomorphic iff their codes agree.
pub fn canonical_tree_code(tree: &BallGraph) -> Result<String, PocsetError> {
    require_tree(tree)?;
    Ok(centres(tree).into_iter().map(|c| rooted_code(tree, c)).min().expect("a tree has a centre"))
}

fn centres(tree: &BallGraph) -> Vec<VertexId> {
    let n = tree.len();
    let mut degree: Vec<usize> = (0..n).map(|v| tree.neighbors(v).len()).collect();
    let mut leaves: Vec<VertexId> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= leaves.len();
        let mut next = Vec::new();
        for &leaf in &leaves {
            degree[leaf] = 0;
            for &(w, _) in tree.neighbors(leaf) {
                if degree[w] > 0 {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        leaves = next;
    }
    leaves
}

fn rooted_code(tree: &BallGraph, root: VertexId) -> String {
    // Children are coded before parents: process in reverse BFS order.
    let n = tree.len();
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![root];
    parent[root] = root;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for &(y, _) in tree.neighbors(x) {
            if parent[y] == usize::MAX {
                parent[y] = x;
                order.push(y);
            }
        }
        i += 1;
    }
    let mut codes: Vec<Vec<String>> = vec![Vec::new(); n];
    let mut done = vec![String::new(); n];
    for &x in order.iter().rev() {
        let mut kids = std::mem::take(&mut codes[x]);
        kids.sort();
        done[x] = format!("({})", kids.concat());
        if x != root {
            let code = done[x].clone();
            codes[parent[x]].push(code);
        }
    }
    std::mem::take(&mut done[root])
}

/// A uniformly random labelled tree with `edges` edges (via a Prüfer
/// sequence), vertices labelled `0, 1, …`.
pub fn random_tree<R: Rng>(rng: &mut R, edges: usize) -> BallGraph {
    let n = edges + 1;
    let mut pairs = Vec::with_capacity(edges);
    if n == 2 {
        pairs.push((0, 1, 1));
    } else if n > 2 {
        let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
        let mut degree = vec![1usize; n];
        for &c in &code {
            degree[c] += 1;
        }
        let mut leaves: std::collections::BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        for &c in &code {
            let leaf = leaves.pop_first().expect("a leaf remains");
            pairs.push((leaf.min(c), leaf.max(c), 1));
            degree[c] -= 1;
            if degree[c] == 1 {
                leaves.insert(c);
            }
        }
        let last: Vec<usize> = leaves.into_iter().collect();
        pairs.push((last[0], last[1], 1));
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    let dist = bfs_dist(n, &pairs);
    let radius = dist.iter().copied().max().unwrap_or(0);
    BallGraph::from_edges(labels, dist, radius, &pairs).expect("Prüfer decoding yields a tree")
}

fn bfs_dist(n: usize, pairs: &[(usize, usize, u32)]) -> Vec<u32> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v, _) in pairs {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut dist = vec![u32::MAX; n];
    dist[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if dist[v] == u32::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}
