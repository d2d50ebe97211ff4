//! Graphs of groups with one edge: amalgams `A ∗_C B` and HNN extensions
//! `A ∗_C`, with normal forms, the Bass–Serre tree, halfspaces of the base
//! edge and trees of spaces.

pub mod affine;
mod artificial;
mod cayley;
mod checks;
mod error;
mod halfspace;
mod spaces;
mod spec;
mod tree;

pub use artificial::{artificial_split, ArtificialOutcome, Intermediate};
pub use cayley::cayley_window;
pub use checks::{syntactic_checks, CheckReport, PatternMatch};
pub use error::SplitError;
pub use halfspace::{halfspace_window, HalfSide, HalfspaceBall};
pub use spaces::{tree_of_spaces, SpaceKind, TreeNode, TreeOfSpaces};
pub use spec::{GElem, Generator, Piece, Side, Splitting, SplittingDecl, Step};
pub use tree::{coset_reps, BassSerreTree, DegreeReport, TreeEdge, TreeVertex};
