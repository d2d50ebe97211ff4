//! Small standard graphs: integer lattices, regular trees, the ladder, and
//! finite graphs given by edge lists.

use crate::ball::{BallGraph, NeighborOracle};
use crate::error::GraphError;

/// The standard Cayley graph of ℤⁿ.
#[derive(Clone, Copy, Debug)]
pub struct Lattice(pub usize);

impl NeighborOracle for Lattice {
    type Vertex = Vec<i64>;

    fn label(&self, v: &Vec<i64>) -> String {
        if v.len() == 1 {
            v[0].to_string()
        } else {
            let parts: Vec<String> = v.iter().map(i64::to_string).collect();
            format!("({})", parts.join(","))
        }
    }

    fn neighbors(&self, v: &Vec<i64>) -> Result<Vec<Vec<i64>>, GraphError> {
        let mut out = Vec::with_capacity(2 * self.0);
        for i in 0..self.0 {
            for step in [1, -1] {
                let mut w = v.clone();
                w[i] += step;
                out.push(w);
            }
        }
        Ok(out)
    }
}

impl Lattice {
    pub fn origin(&self) -> Vec<i64> {
        vec![0; self.0]
    }
}

/// Cayley graph of the free group of the given rank: the 2k-regular tree.
/// Vertices are reduced words, letters `±(i+1)`.
#[derive(Clone, Copy, Debug)]
pub struct FreeTree(pub usize);

impl NeighborOracle for FreeTree {
    type Vertex = Vec<i8>;

    fn label(&self, v: &Vec<i8>) -> String {
        if v.is_empty() {
            return "1".to_string();
        }
        v.iter()
            .map(|&x| {
                let c = (b'a' + (x.unsigned_abs() - 1)) as char;
                if x < 0 {
                    format!("{c}^-1")
                } else {
                    c.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    fn neighbors(&self, v: &Vec<i8>) -> Result<Vec<Vec<i8>>, GraphError> {
        let mut out = Vec::with_capacity(2 * self.0);
        for i in 1..=self.0 as i8 {
            for x in [i, -i] {
                let mut w = v.clone();
                if w.last() == Some(&-x) {
                    w.pop();
                } else {
                    w.push(x);
                }
                out.push(w);
            }
        }
        Ok(out)
    }
}

/// ℤ × {0, 1} with rungs.
#[derive(Clone, Copy, Debug)]
pub struct Ladder;

impl NeighborOracle for Ladder {
    type Vertex = (i64, u8);

    fn label(&self, v: &(i64, u8)) -> String {
        format!("({},{})", v.0, v.1)
    }

    fn neighbors(&self, v: &(i64, u8)) -> Result<Vec<(i64, u8)>, GraphError> {
        Ok(vec![(v.0 - 1, v.1), (v.0 + 1, v.1), (v.0, 1 - v.1)])
    }
}

/// Finite graph on vertices `0..n` labelled by their index; every vertex is
/// at distance 0 of a radius-0 window.
pub fn finite_graph(n: usize, edges: &[(usize, usize, u32)]) -> Result<BallGraph, GraphError> {
    let labels = (0..n).map(|i| i.to_string()).collect();
    BallGraph::from_edges(labels, vec![0; n], 0, edges)
}

pub fn path(n: usize) -> BallGraph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i, 1)).collect();
    finite_graph(n, &edges).expect("path is valid")
}

pub fn cycle(n: usize) -> BallGraph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1)).collect();
    finite_graph(n, &edges).expect("cycle is valid")
}

pub fn complete(n: usize) -> BallGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j, 1));
        }
    }
    finite_graph(n, &edges).expect("complete graph is valid")
}
