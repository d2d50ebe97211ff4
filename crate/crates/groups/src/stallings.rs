//! Stallings cores of finitely generated subgroups of free groups.
//!
//! Every edge carries a weight in the free group on the subgroup's given
//! generators, so reading a member along the core also spells it as a word in
//! those generators. Folding keeps weights consistent by re-gauging the
//! vertex being absorbed; two parallel edges with different weights witness
//! a relation among the generators.

use std::collections::VecDeque;

use crate::group::{invert_word, push_reduced, reduce_word, Letter, Word};

#[derive(Clone, Debug)]
struct Edge {
    from: usize,
    gen: usize,
    to: usize,
    weight: Word,
}

fn mul(a: &[Letter], b: &[Letter]) -> Word {
    let mut out = a.to_vec();
    for &l in b {
        push_reduced(&mut out, l);
    }
    out
}

#[derive(Clone, Debug)]
pub struct StallingsCore {
    rank: usize,
    /// `step[v][letter code] = (target, weight)`.
    step: Vec<Vec<Option<(usize, Word)>>>,
    /// Shortlex-least path from the basepoint to each vertex.
    paths: Vec<Word>,
    relations: Vec<Word>,
}

/// Outcome of reading a word from the basepoint.
struct Reading {
    vertex: usize,
    consumed: usize,
    weight: Word,
}

impl StallingsCore {
    /// Folds the bouquet of the given generator words (over letters of a free
    /// group of rank `rank`).
    pub fn new(rank: usize, gens: &[Word]) -> Self {
        let mut edges: Vec<Option<Edge>> = Vec::new();
        let mut n_vertices = 1;
        let mut relations = Vec::new();
        for (j, g) in gens.iter().enumerate() {
            let g = reduce_word(g);
            let label = vec![Letter::new(j, false)];
            if g.is_empty() {
                relations.push(label);
                continue;
            }
            let mut prev = 0;
            for (i, &l) in g.iter().enumerate() {
                let next = if i + 1 == g.len() {
                    0
                } else {
                    n_vertices += 1;
                    n_vertices - 1
                };
                let weight = if i == 0 { label.clone() } else { Vec::new() };
                let e = if l.is_inverse() {
                    Edge { from: next, gen: l.gen(), to: prev, weight: invert_word(&weight) }
                } else {
                    Edge { from: prev, gen: l.gen(), to: next, weight }
                };
                edges.push(Some(e));
                prev = next;
            }
        }
        Self::fold(&mut edges, &mut relations);

        let mut ids = vec![usize::MAX; n_vertices];
        ids[0] = 0;
        let mut count = 1;
        for e in edges.iter().flatten() {
            for v in [e.from, e.to] {
                if ids[v] == usize::MAX {
                    ids[v] = count;
                    count += 1;
                }
            }
        }
        let mut step = vec![vec![None; 2 * rank]; count];
        for e in edges.iter().flatten() {
            let (u, v) = (ids[e.from], ids[e.to]);
            step[u][Letter::new(e.gen, false).code() as usize] = Some((v, e.weight.clone()));
            step[v][Letter::new(e.gen, true).code() as usize] = Some((u, invert_word(&e.weight)));
        }
        let paths = Self::shortlex_paths(&step, rank);
        relations.retain(|r| !r.is_empty());
        StallingsCore {
            rank,
            step,
            paths,
            relations,
        }
    }

    /// Half-edges at `v`: `(edge index, letter read leaving v, far end, weight)`.
    fn half_edges(edges: &[Option<Edge>], v: usize) -> Vec<(usize, Letter, usize, Word)> {
        let mut out = Vec::new();
        for (i, e) in edges.iter().enumerate() {
            let Some(e) = e else { continue };
            if e.from == v {
                out.push((i, Letter::new(e.gen, false), e.to, e.weight.clone()));
            }
            if e.to == v {
                out.push((i, Letter::new(e.gen, true), e.from, invert_word(&e.weight)));
            }
        }
        out
    }

    /// Re-gauges vertex `x` by `z`: weights entering `x` gain `z` on the
    /// right, weights leaving it gain `z⁻¹` on the left.
    fn gauge(edges: &mut [Option<Edge>], x: usize, z: &[Letter]) {
        let zi = invert_word(z);
        for e in edges.iter_mut().flatten() {
            if e.to == x {
                e.weight = mul(&e.weight, z);
            }
            if e.from == x {
                e.weight = mul(&zi, &e.weight);
            }
        }
    }

    fn fold(edges: &mut [Option<Edge>], relations: &mut Vec<Word>) {
        'outer: loop {
            let mut vertices: Vec<usize> = edges.iter().flatten().flat_map(|e| [e.from, e.to]).collect();
            vertices.sort_unstable();
            vertices.dedup();
            for &p in &vertices {
                let hs = Self::half_edges(edges, p);
                for a in 0..hs.len() {
                    for b in a + 1..hs.len() {
                        let (e1, l1, q1, w1) = &hs[a];
                        let (e2, l2, q2, w2) = &hs[b];
                        if l1 != l2 || e1 == e2 {
                            continue;
                        }
                        if q1 == q2 {
                            let r = mul(w1, &invert_word(w2));
                            if !r.is_empty() {
                                relations.push(r);
                            }
                            edges[*e2] = None;
                            continue 'outer;
                        }
                        // Absorb a non-basepoint end, preferring one that is not p.
                        let absorb_second = *q2 != 0 && (*q2 != p || *q1 == 0);
                        let (x, keep, z) = if absorb_second {
                            (*q2, *q1, mul(&invert_word(w2), w1))
                        } else {
                            (*q1, *q2, mul(&invert_word(w1), w2))
                        };
                        Self::gauge(edges, x, &z);
                        for e in edges.iter_mut().flatten() {
                            if e.from == x {
                                e.from = keep;
                            }
                            if e.to == x {
                                e.to = keep;
                            }
                        }
                        let drop = if absorb_second { *e2 } else { *e1 };
                        edges[drop] = None;
                        continue 'outer;
                    }
                }
            }
            break;
        }
    }

    fn shortlex_paths(step: &[Vec<Option<(usize, Word)>>], rank: usize) -> Vec<Word> {
        let mut paths: Vec<Option<Word>> = vec![None; step.len()];
        paths[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for (code, slot) in step[u].iter().enumerate().take(2 * rank) {
                if let Some((v, _)) = slot {
                    if paths[*v].is_none() {
                        let mut p = paths[u].clone().unwrap();
                        p.push(Letter::new(code / 2, code % 2 == 1));
                        paths[*v] = Some(p);
                        queue.push_back(*v);
                    }
                }
            }
        }
        paths.into_iter().map(|p| p.expect("core is connected")).collect()
    }

    fn read(&self, w: &[Letter]) -> Reading {
        let mut v = 0;
        let mut weight = Vec::new();
        for (i, &l) in w.iter().enumerate() {
            match &self.step[v][l.code() as usize] {
                Some((next, ww)) => {
                    weight = mul(&weight, ww);
                    v = *next;
                }
                None => {
                    return Reading { vertex: v, consumed: i, weight };
                }
            }
        }
        Reading {
            vertex: v,
            consumed: w.len(),
            weight,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.step.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Nontrivial words in the subgroup generators that evaluate to 1.
    pub fn relations(&self) -> &[Word] {
        &self.relations
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        let r = self.read(w);
        r.consumed == w.len() && r.vertex == 0
    }

    /// A word in the subgroup generators (letters numbered by generator
    /// index) evaluating to `w`, if `w` is a member.
    pub fn express(&self, w: &[Letter]) -> Option<Word> {
        let r = self.read(w);
        (r.consumed == w.len() && r.vertex == 0).then_some(r.weight)
    }

    /// Shortlex-least element of the right coset `H·w`.
    pub fn right_rep(&self, w: &[Letter]) -> Word {
        let r = self.read(w);
        let mut out = self.paths[r.vertex].clone();
        for &l in &w[r.consumed..] {
            push_reduced(&mut out, l);
        }
        out
    }

    /// Number of cosets when the core is a complete covering, else `None`.
    pub fn index(&self) -> Option<u64> {
        self.step
            .iter()
            .all(|row| row.iter().all(Option::is_some))
            .then_some(self.step.len() as u64)
    }

    /// Every generator letter is readable as a loop at the basepoint.
    pub fn is_whole(&self) -> bool {
        self.step.len() == 1 && self.step[0].iter().all(Option::is_some)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &[(usize, bool)]) -> Word {
        s.iter().map(|&(g, i)| Letter::new(g, i)).collect()
    }

    #[test]
    fn dependent_generators_leave_a_relation() {
        // a, a² : the second is the square of the first.
        let core = StallingsCore::new(2, &[w(&[(0, false)]), w(&[(0, false), (0, false)])]);
        assert_eq!(core.vertex_count(), 1);
        assert_eq!(core.relations().len(), 1);
    }

    #[test]
    fn free_basis_has_no_relations() {
        let core = StallingsCore::new(2, &[w(&[(0, false), (0, false)]), w(&[(1, false)]), w(&[(0, false), (1, false), (0, true)])]);
        assert!(core.relations().is_empty());
        assert_eq!(core.vertex_count(), 2);
        let x = w(&[(0, false), (1, false), (0, true), (1, false)]);
        assert_eq!(core.express(&x), Some(w(&[(2, false), (1, false)])));
    }
}
