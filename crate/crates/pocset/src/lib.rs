//! Pocsets (posets with an order-reversing involution), their ultrafilters
//! and the 1-skeleton of the associated cube complex, plus the halfspace
//! pocsets of finite trees and wallspaces.

mod cube;
mod error;
pub mod io;
mod pocset;
mod tree;
mod wall;

pub use cube::{cube, is_tree_check, CubeSkeleton, Ultrafilter, DEFAULT_CUBE_BUDGET};
pub use error::PocsetError;
pub use pocset::{Pocset, WIDTH_LIMIT};
pub use tree::{canonical_tree_code, random_tree, tree_halfspace_pocset};
pub use wall::wallspace_pocset;
