use serde::{Deserialize, Serialize};

use crate::ball::{grow_ball, BallGraph, NeighborOracle};
use crate::error::GraphError;

/// How "unbounded" is decided from a finite window.
pub const UNBOUNDED_PROXY: &str = "component meets the probe frontier";

/// Finite-scale end count of a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndReport {
    pub inner_radius: u32,
    pub probe_radius: u32,
    pub unbounded_count: usize,
    pub bounded_count: usize,
    /// Unbounded count recomputed at `probe_radius - 1`.
    pub previous_unbounded: usize,
    pub stable: bool,
    pub proxy: String,
}

impl EndReport {
    pub fn summary(&self) -> String {
        let n = self.unbounded_count;
        let noun = if n == 1 { "component" } else { "components" };
        let tag = if self.stable { "stable" } else { "unstable" };
        format!("{n} unbounded {noun} ({tag})")
    }
}

fn count_unbounded(ball: &BallGraph, r: u32, big_r: u32) -> (usize, usize) {
    let mask: Vec<bool> = ball
        .distances()
        .iter()
        .map(|&d| d > r && d <= big_r)
        .collect();
    let comps = ball.components_of(&mask);
    let unbounded = comps
        .iter()
        .filter(|c| c.iter().any(|&v| ball.dist(v) == big_r))
        .count();
    (unbounded, comps.len() - unbounded)
}

/// Counts components of `B(R) \ B(r)` inside an existing window whose
/// distances are measured from the probe centre. `R` defaults to the window
/// radius.
pub fn end_report(ball: &BallGraph, r: u32, big_r: Option<u32>) -> Result<EndReport, GraphError> {
    let big_r = big_r.unwrap_or(ball.radius());
    if big_r <= r {
        return Err(GraphError::Invalid(format!(
            "probe radius {big_r} must exceed inner radius {r}"
        )));
    }
    if big_r > ball.radius() {
        return Err(GraphError::Invalid(format!(
            "probe radius {big_r} exceeds window radius {}",
            ball.radius()
        )));
    }
    let (unbounded, bounded) = count_unbounded(ball, r, big_r);
    let previous = if big_r >= r + 2 {
        count_unbounded(ball, r, big_r - 1).0
    } else {
        0
    };
    Ok(EndReport {
        inner_radius: r,
        probe_radius: big_r,
        unbounded_count: unbounded,
        bounded_count: bounded,
        previous_unbounded: previous,
        stable: big_r >= r + 2 && previous == unbounded,
        proxy: UNBOUNDED_PROXY.to_string(),
    })
}

pub fn end_probe<O: NeighborOracle>(
    oracle: &O,
    center: &O::Vertex,
    r: u32,
    big_r: u32,
    budget: Option<usize>,
) -> Result<EndReport, GraphError> {
    if big_r <= r {
        return Err(GraphError::Invalid(format!(
            "probe radius {big_r} must exceed inner radius {r}"
        )));
    }
    let ball = grow_ball(oracle, center, big_r, budget)?;
    end_report(&ball.graph, r, None)
}
