use std::collections::HashSet;

use hst_graph::{GraphError, NeighborOracle};
use hst_groups::{Elem, MarkedGroup};
use serde::Serialize;

use crate::error::SplitError;
use crate::spec::{GElem, Piece, Side, Splitting, Step};

/// A vertex `g·V` of the Bass–Serre tree, `V` the left or right vertex
/// group (always `Left` for HNN extensions). `rep` is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TreeVertex {
    pub side: Side,
    pub rep: GElem,
}

/// An edge `g·e₀` of the Bass–Serre tree with canonical `rep`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TreeEdge {
    pub rep: GElem,
}

impl Splitting {
    fn clear_tail(&self, g: &GElem) -> GElem {
        let mut out = g.clone();
        out.tail = self.identity().tail;
        out
    }

    /// The vertex `g·V_side`.
    pub fn vertex_of(&self, g: &GElem, side: Side) -> TreeVertex {
        let mut rep = self.clear_tail(g);
        let side = if self.is_hnn() { Side::Left } else { side };
        if !self.is_hnn() {
            let drop = matches!(
                (rep.steps.last(), side),
                (Some(Step::Left(_)), Side::Left) | (Some(Step::Right(_)), Side::Right)
            );
            if drop {
                rep.steps.pop();
            }
        }
        TreeVertex { side, rep }
    }

    /// The orbit map `g ↦ g·V_left`.
    pub fn project(&self, g: &GElem) -> TreeVertex {
        self.vertex_of(g, Side::Left)
    }

    pub fn basepoint(&self) -> TreeVertex {
        self.project(&self.identity())
    }

    /// `h · v`.
    pub fn act(&self, h: &GElem, v: &TreeVertex) -> Result<TreeVertex, SplitError> {
        Ok(self.vertex_of(&self.mul(h, &v.rep)?, v.side))
    }

    /// The edge `g·e₀`. For amalgams `e₀` joins the two vertex groups; for
    /// HNN extensions it joins `V` and `t·V`.
    pub fn edge_of(&self, g: &GElem) -> Result<TreeEdge, SplitError> {
        if self.is_hnn() {
            let base = self.vertex_group(Side::Left);
            let rep = self.engine(Side::Left).left_rep(&g.tail)?;
            debug_assert!(base.owns(&rep));
            Ok(TreeEdge { rep: GElem { steps: g.steps.clone(), tail: rep } })
        } else {
            Ok(TreeEdge { rep: self.clear_tail(g) })
        }
    }

    pub fn base_edge(&self) -> TreeEdge {
        TreeEdge { rep: self.identity() }
    }

    pub fn edge_ends(&self, e: &TreeEdge) -> Result<(TreeVertex, TreeVertex), SplitError> {
        if self.is_hnn() {
            let mut far = e.rep.clone();
            self.push(&mut far, &Piece::Stable { inverse: false })?;
            Ok((self.project(&e.rep), self.project(&far)))
        } else {
            Ok((self.vertex_of(&e.rep, Side::Left), self.vertex_of(&e.rep, Side::Right)))
        }
    }

    pub fn vertex_label(&self, v: &TreeVertex) -> String {
        let name = match v.side {
            Side::Left => "A",
            Side::Right => "B",
        };
        if self.is_identity(&v.rep) {
            name.to_string()
        } else {
            format!("{}.{}", self.label(&v.rep), name)
        }
    }

    pub fn edge_label(&self, e: &TreeEdge) -> String {
        if self.is_identity(&e.rep) {
            "C".to_string()
        } else {
            format!("{}.C", self.label(&e.rep))
        }
    }
}

/// Distinct canonical left-coset representatives of `engine`'s subgroup
/// among elements of length at most `radius`, shortlex sorted.
pub fn coset_reps(
    group: &MarkedGroup,
    engine: &hst_groups::SubgroupEngine,
    radius: usize,
) -> Result<Vec<Elem>, SplitError> {
    let gens: Vec<Elem> = group
        .generators()
        .into_iter()
        .flat_map(|g| [group.inv(&g), g])
        .collect();
    let mut seen = HashSet::from([group.identity()]);
    let mut layer = vec![group.identity()];
    let mut reps = HashSet::from([engine.left_rep(&group.identity())?]);
    for _ in 0..radius {
        let mut next = Vec::new();
        for x in &layer {
            for s in &gens {
                let y = group.mul(x, s);
                if seen.insert(y.clone()) {
                    reps.insert(engine.left_rep(&y)?);
                    next.push(y);
                }
            }
        }
        layer = next;
    }
    let mut reps: Vec<Elem> = reps.into_iter().collect();
    reps.sort_by(|a, b| group.shortlex_cmp(a, b));
    Ok(reps)
}

/// Degree data of the lazily expanded tree at a vertex of one side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub side: Side,
    /// Edges through the vertex whose coset representative is short enough.
    pub visible: usize,
    /// True degree (the index of the edge group), `None` if infinite.
    pub index: Option<u64>,
}

impl DegreeReport {
    pub fn frontier_limited(&self) -> bool {
        self.index.is_none_or(|i| i as usize > self.visible)
    }
}

/// The Bass–Serre tree as a neighbor oracle. Edges through a vertex are
/// listed only for coset representatives of length at most `rep_radius`.
#[derive(Clone, Debug)]
pub struct BassSerreTree<'a> {
    split: &'a Splitting,
    /// Amalgam: reps of C in the left and right groups. HNN: reps of the
    /// domain and image subgroups in the base.
    reps: [Vec<Elem>; 2],
}

impl<'a> BassSerreTree<'a> {
    pub fn new(split: &'a Splitting, rep_radius: usize) -> Result<Self, SplitError> {
        split.require_nontrivial()?;
        let left = coset_reps(split.vertex_group(Side::Left), split.engine(Side::Left), rep_radius)?;
        let right = coset_reps(split.vertex_group(Side::Right), split.engine(Side::Right), rep_radius)?;
        Ok(BassSerreTree { split, reps: [left, right] })
    }

    pub fn basepoint(&self) -> TreeVertex {
        self.split.basepoint()
    }

    pub fn degrees(&self) -> Vec<DegreeReport> {
        if self.split.is_hnn() {
            vec![DegreeReport {
                side: Side::Left,
                visible: self.reps[0].len() + self.reps[1].len(),
                index: self.split.engine(Side::Left).index().zip(self.split.engine(Side::Right).index()).map(|(a, b)| a + b),
            }]
        } else {
            [Side::Left, Side::Right]
                .into_iter()
                .enumerate()
                .map(|(i, side)| DegreeReport {
                    side,
                    visible: self.reps[i].len(),
                    index: self.split.engine(side).index(),
                })
                .collect()
        }
    }

    fn expand(&self, v: &TreeVertex) -> Result<Vec<TreeVertex>, SplitError> {
        let s = self.split;
        let mut out = Vec::new();
        if s.is_hnn() {
            for (reps, inverse) in [(&self.reps[0], false), (&self.reps[1], true)] {
                for a in reps {
                    let mut g = v.rep.clone();
                    s.push(&mut g, &Piece::Vertex(Side::Left, a.clone()))?;
                    s.push(&mut g, &Piece::Stable { inverse })?;
                    out.push(s.project(&g));
                }
            }
        } else {
            let (i, other) = match v.side {
                Side::Left => (0, Side::Right),
                Side::Right => (1, Side::Left),
            };
            for a in &self.reps[i] {
                let mut g = v.rep.clone();
                s.push(&mut g, &Piece::Vertex(v.side, a.clone()))?;
                out.push(s.vertex_of(&g, other));
            }
        }
        Ok(out)
    }
}

impl NeighborOracle for BassSerreTree<'_> {
    type Vertex = TreeVertex;

    fn label(&self, v: &TreeVertex) -> String {
        self.split.vertex_label(v)
    }

    fn neighbors(&self, v: &TreeVertex) -> Result<Vec<TreeVertex>, GraphError> {
        Ok(self.expand(v)?)
    }
}
