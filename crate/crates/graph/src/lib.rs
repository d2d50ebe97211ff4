//! Finite windows onto locally finite graphs.
//!
//! A graph is presented by a [`NeighborOracle`]; [`grow_ball`] materializes
//! a BFS ball as a [`BallGraph`]. On top of that sit the finite-scale end
//! probe, max-flow minimum cuts with canonical tie-breaking, and an
//! exhaustive cut enumerator used as a test oracle.

mod ball;
mod brute;
mod cut;
mod ends;
mod error;
pub mod io;
pub mod samples;

pub use ball::{
    default_budget, grow_ball, shortlex_cmp, shortlex_key, BallGraph, GrownBall, NeighborOracle,
    VertexId, BUDGET_ENV, DEFAULT_BUDGET,
};
pub use brute::{bruteforce_min_separating, enumerate_cuts_bruteforce, BRUTE_FORCE_LIMIT};
pub use cut::{cmp_label_lists, min_vertex_set_cut, Cut};
pub use ends::{end_probe, end_report, EndReport, UNBOUNDED_PROXY};
pub use error::GraphError;
