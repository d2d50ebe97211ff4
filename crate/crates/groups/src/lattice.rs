//! Subgroups of ℤⁿ through a Hermite normal form basis.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex};

use crate::error::GroupError;

/// Default number of cosets the lazy Schreier search may visit.
pub const SCHREIER_BUDGET: usize = 1_000_000;

#[derive(Debug, Default)]
struct Schreier {
    reps: HashMap<Vec<i64>, Vec<i64>>,
    queue: VecDeque<Vec<i64>>,
    started: bool,
    /// Set once the budget has been hit mid-expansion; the cache is then no
    /// longer trustworthy.
    exhausted: bool,
}

#[derive(Clone, Debug)]
pub struct LatticeEngine {
    dim: usize,
    /// HNF rows: leading entries positive, entries above each pivot reduced.
    basis: Vec<Vec<i64>>,
    pivots: Vec<usize>,
    /// `basis[i] = Σ_j transform[i][j] · gens[j]`.
    transform: Vec<Vec<i64>>,
    /// Integer relations among the given generators.
    kernel: Vec<Vec<i64>>,
    /// Set when the lattice is `⊕ m_i e_{p_i}`: modulus per coordinate.
    diagonal: Option<Vec<Option<i64>>>,
    schreier: Arc<Mutex<Schreier>>,
    budget: usize,
}

fn overflow() -> GroupError {
    GroupError::Invalid("integer overflow in Hermite normal form".into())
}

fn axpy(row: &mut [i64], q: i64, other: &[i64]) -> Result<(), GroupError> {
    for (x, &y) in row.iter_mut().zip(other) {
        *x = x
            .checked_sub(q.checked_mul(y).ok_or_else(overflow)?)
            .ok_or_else(overflow)?;
    }
    Ok(())
}

impl LatticeEngine {
    pub fn new(dim: usize, gens: &[Vec<i64>]) -> Result<Self, GroupError> {
        let k = gens.len();
        let mut rows: Vec<(Vec<i64>, Vec<i64>)> = gens
            .iter()
            .enumerate()
            .map(|(j, g)| {
                let mut u = vec![0; k];
                u[j] = 1;
                (g.clone(), u)
            })
            .collect();
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..dim {
            loop {
                let mut best: Option<usize> = None;
                for r in top..rows.len() {
                    if rows[r].0[col] != 0
                        && best.is_none_or(|b| rows[r].0[col].abs() < rows[b].0[col].abs())
                    {
                        best = Some(r);
                    }
                }
                let Some(b) = best else { break };
                rows.swap(top, b);
                let mut done = true;
                for r in top + 1..rows.len() {
                    if rows[r].0[col] != 0 {
                        let q = rows[r].0[col].div_euclid(rows[top].0[col]);
                        let (head, tail) = rows.split_at_mut(r);
                        axpy(&mut tail[0].0, q, &head[top].0)?;
                        axpy(&mut tail[0].1, q, &head[top].1)?;
                        if tail[0].0[col] != 0 {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if top < rows.len() && rows[top].0[col] != 0 {
                if rows[top].0[col] < 0 {
                    let (g, u) = &mut rows[top];
                    for x in g.iter_mut().chain(u.iter_mut()) {
                        *x = -*x;
                    }
                }
                let p = rows[top].0[col];
                for r in 0..top {
                    let q = rows[r].0[col].div_euclid(p);
                    if q != 0 {
                        let (head, tail) = rows.split_at_mut(top);
                        axpy(&mut head[r].0, q, &tail[0].0)?;
                        axpy(&mut head[r].1, q, &tail[0].1)?;
                    }
                }
                pivots.push(col);
                top += 1;
            }
        }
        let kernel = rows[top..].iter().map(|(_, u)| u.clone()).collect();
        rows.truncate(top);
        let (basis, transform): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
        let diagonal = basis
            .iter()
            .zip(&pivots)
            .all(|(row, &p)| row.iter().enumerate().all(|(i, &x)| i == p || x == 0))
            .then(|| {
                let mut m = vec![None; dim];
                for (row, &p) in basis.iter().zip(&pivots) {
                    m[p] = Some(row[p]);
                }
                m
            });
        Ok(LatticeEngine {
            dim,
            basis,
            pivots,
            transform,
            kernel,
            diagonal,
            schreier: Arc::new(Mutex::new(Schreier::default())),
            budget: SCHREIER_BUDGET,
        })
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// Integer relations among the given generators (empty iff they are a basis).
    pub fn kernel(&self) -> &[Vec<i64>] {
        &self.kernel
    }

    pub fn index(&self) -> Option<u64> {
        (self.rank() == self.dim).then(|| {
            self.basis
                .iter()
                .zip(&self.pivots)
                .map(|(r, &p)| r[p] as u64)
                .product()
        })
    }

    pub fn is_whole(&self) -> bool {
        self.rank() == self.dim && self.basis.iter().zip(&self.pivots).all(|(r, &p)| r[p] == 1)
    }

    /// Coefficients over the given generators, if `x` is in the lattice.
    pub fn express(&self, x: &[i64]) -> Option<Vec<i64>> {
        let mut x = x.to_vec();
        let mut coeff = vec![0i64; self.transform.first().map_or(0, Vec::len)];
        for ((row, &p), t) in self.basis.iter().zip(&self.pivots).zip(&self.transform) {
            if x[p] % row[p] != 0 {
                return None;
            }
            let q = x[p] / row[p];
            axpy(&mut x, q, row).ok()?;
            for (c, &tj) in coeff.iter_mut().zip(t) {
                *c += q * tj;
            }
        }
        x.iter().all(|&v| v == 0).then_some(coeff)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.express(x).is_some()
    }

    /// Canonical residue of `x` modulo the lattice.
    pub fn residue(&self, x: &[i64]) -> Vec<i64> {
        let mut x = x.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let q = x[p].div_euclid(row[p]);
            if q != 0 {
                axpy(&mut x, q, row).expect("residue stays bounded");
            }
        }
        x
    }

    /// Shortlex-least element of `x + L` (letters ordered e₁ < e₁⁻¹ < e₂ …).
    pub fn coset_rep(&self, x: &[i64]) -> Result<Vec<i64>, GroupError> {
        if let Some(m) = &self.diagonal {
            return Ok(x
                .iter()
                .zip(m)
                .map(|(&v, m)| match m {
                    None => v,
                    Some(m) => {
                        let r = v.rem_euclid(*m);
                        if 2 * r > *m {
                            r - m
                        } else {
                            r
                        }
                    }
                })
                .collect());
        }
        let key = self.residue(x);
        let mut s = self.schreier.lock().expect("schreier cache poisoned");
        if s.exhausted {
            return Err(GroupError::Budget { limit: self.budget });
        }
        if !s.started {
            let zero = vec![0; self.dim];
            s.reps.insert(self.residue(&zero), zero.clone());
            s.queue.push_back(zero);
            s.started = true;
        }
        loop {
            if let Some(rep) = s.reps.get(&key) {
                return Ok(rep.clone());
            }
            let Some(cur) = s.queue.pop_front() else {
                return Err(GroupError::Invalid("coset search exhausted".into()));
            };
            for i in 0..self.dim {
                for step in [1, -1] {
                    let mut next = cur.clone();
                    next[i] += step;
                    let k = self.residue(&next);
                    if !s.reps.contains_key(&k) {
                        if s.reps.len() >= self.budget {
                            s.exhausted = true;
                            return Err(GroupError::Budget { limit: self.budget });
                        }
                        s.reps.insert(k, next.clone());
                        s.queue.push_back(next);
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_basis_and_kernel() {
        let l = LatticeEngine::new(2, &[vec![2, 4], vec![1, 2], vec![0, 3]]).unwrap();
        assert_eq!(l.basis(), &[vec![1, 2], vec![0, 3]]);
        assert_eq!(l.kernel().len(), 1);
        assert!(l.contains(&[3, 9]));
        assert!(!l.contains(&[1, 0]));
    }

    #[test]
    fn schreier_search_on_skew_lattice() {
        // ⟨(1,2),(0,3)⟩ has index 3 with (1,0) ≡ (0,1) and (-1,0) ≡ (0,2).
        let l = LatticeEngine::new(2, &[vec![1, 2], vec![0, 3]]).unwrap();
        assert_eq!(l.coset_rep(&[5, 5]).unwrap(), vec![1, 0]);
        assert_eq!(l.coset_rep(&[0, 2]).unwrap(), vec![-1, 0]);
        assert_eq!(l.coset_rep(&[0, 1]).unwrap(), vec![1, 0]);
        assert_eq!(l.coset_rep(&[2, 1]).unwrap(), vec![0, 0]);
    }

    #[test]
    fn infinite_index_exhausts_budget() {
        let l = LatticeEngine::new(2, &[vec![1, 1]]).unwrap().with_budget(50);
        assert!(matches!(l.coset_rep(&[40, 0]), Err(GroupError::Budget { limit: 50 })));
        assert!(matches!(l.coset_rep(&[0, 0]), Err(GroupError::Budget { .. })));
    }
}
