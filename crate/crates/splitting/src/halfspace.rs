use hst_graph::{end_report, BallGraph, EndReport, GrownBall, VertexId};
use serde::{Deserialize, Serialize};

use crate::cayley::cayley_window;
use crate::error::SplitError;
use crate::spec::{GElem, Splitting, Step};

/// One of the two halfspaces of the base edge. `Left` contains the base
/// vertex group; `Right` is the other side (the right vertex group of an
/// amalgam, or the elements starting with the stable letter for HNN).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HalfSide {
    Left,
    Right,
}

impl HalfSide {
    pub fn opposite(self) -> HalfSide {
        match self {
            HalfSide::Left => HalfSide::Right,
            HalfSide::Right => HalfSide::Left,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            HalfSide::Left => "left",
            HalfSide::Right => "right",
        }
    }
}

impl Splitting {
    /// Membership of `g` in the halfspaces of the base edge, as
    /// `(left, right)`. Both hold exactly on the wall.
    pub fn halfspaces_of(&self, g: &GElem) -> (bool, bool) {
        if self.in_edge_group(g) {
            return (true, true);
        }
        let right = match g.steps.first() {
            Some(Step::Right(_)) => true,
            Some(Step::Up(r)) => self.vertex_group(crate::Side::Left).is_identity(r),
            _ => false,
        };
        (!right, right)
    }

    pub fn in_half(&self, g: &GElem, side: HalfSide) -> bool {
        let (l, r) = self.halfspaces_of(g);
        match side {
            HalfSide::Left => l,
            HalfSide::Right => r,
        }
    }

    /// Membership in the halfspace `edge · side`, where `edge` names the
    /// translate `edge·e₀` of the base edge.
    pub fn in_translated_half(&self, edge: &GElem, side: HalfSide, x: &GElem) -> Result<bool, SplitError> {
        let y = self.mul(&self.inv(edge)?, x)?;
        Ok(self.in_half(&y, side))
    }

    pub fn on_translated_wall(&self, edge: &GElem, x: &GElem) -> Result<bool, SplitError> {
        let y = self.mul(&self.inv(edge)?, x)?;
        Ok(self.in_edge_group(&y))
    }
}

/// A halfspace seen through a finite Cayley window.
#[derive(Clone, Debug)]
pub struct HalfspaceBall {
    /// The halfspace is `edge · side`.
    pub edge: GElem,
    pub side: HalfSide,
    pub radius: u32,
    /// Induced subgraph of the Cayley window on the halfspace, wall marked.
    pub graph: BallGraph,
    pub points: Vec<GElem>,
    /// Window vertices on the wall.
    pub wall: Vec<VertexId>,
    pub connected: bool,
}

impl HalfspaceBall {
    /// Cuts the halfspace out of an existing window.
    pub fn from_window(
        split: &Splitting,
        ball: &GrownBall<GElem>,
        edge: &GElem,
        side: HalfSide,
    ) -> Result<Self, SplitError> {
        let n = ball.points.len();
        let inv = split.inv(edge)?;
        let mut keep = vec![false; n];
        let mut wall = vec![false; n];
        for (i, p) in ball.points.iter().enumerate() {
            let y = split.mul(&inv, p)?;
            keep[i] = split.in_half(&y, side);
            wall[i] = split.in_edge_group(&y);
        }
        let mut marked = ball.graph.clone();
        marked.set_wall(wall)?;
        let (graph, old) = marked.induced(&keep);
        let points: Vec<GElem> = old.iter().map(|&v| ball.points[v].clone()).collect();
        let wall = graph.wall_vertices();
        let connected = graph.is_connected();
        Ok(HalfspaceBall {
            edge: edge.clone(),
            side,
            radius: ball.graph.radius(),
            graph,
            points,
            wall,
            connected,
        })
    }

    /// The induced subgraph on the wall.
    pub fn wall_window(&self) -> BallGraph {
        let mut mask = vec![false; self.graph.len()];
        for &v in &self.wall {
            mask[v] = true;
        }
        self.graph.induced(&mask).0
    }

    pub fn ends(&self, inner: u32, probe: Option<u32>) -> Result<EndReport, SplitError> {
        Ok(end_report(&self.graph, inner, probe)?)
    }
}

/// The halfspace `edge · side` inside the Cayley ball of radius `radius`
/// around `edge`.
pub fn halfspace_window(
    split: &Splitting,
    edge: &GElem,
    side: HalfSide,
    radius: u32,
    budget: Option<usize>,
) -> Result<HalfspaceBall, SplitError> {
    if radius < 1 {
        return Err(SplitError::Invalid("halfspace windows need radius at least 1".into()));
    }
    let ball = cayley_window(split, edge, radius, budget)?;
    HalfspaceBall::from_window(split, &ball, edge, side)
}
