//! Minimal cuts of multi-ended halfspaces, the trees they induce on the
//! wall, and the refined splitting trees built from them.

mod classes;
mod cut;
mod error;
mod order;
mod pipeline;
mod tprime;
mod window;

pub use classes::{build_edge_tree, wall_distance, ClassInfo, ClassMap, EdgeTree, Translate, TranslationWitness, WindowAction};
pub use cut::{find_halfspace_cut, frontier_components, multiedge_modify, CutSearch, HalfspaceCut};
pub use error::ChopError;
pub use order::{build_refined_pocset, window_elements, ChopGeometry, Half, OrderEngine, PElement, RefinedPocset, Row};
pub use window::{point_index, tree_window, SplitGeometry, TreeWindow, TreeWindowSummary, WallAction};
pub use pipeline::{
    chop_round, collapse, iterate_chop, ChopParams, ChopReport, CutSummary, EdgeTreeSummary, HalfspaceProbe, PropertyCheck,
    RefinedSummary, RoundOutcome, RoundReport, SplittingSummary, REPORT_FORMAT,
};
pub use tprime::{check_equivariance, hyperbolic_witness, refine_tree, EquivarianceCheck, HyperbolicWitness, RefinedTree};
