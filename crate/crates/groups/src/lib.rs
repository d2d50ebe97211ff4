//! Marked groups (free, free abelian, and finite direct and free products of
//! these), their canonical normal forms, and engines for finitely generated
//! subgroups.

mod cayley;
mod engine;
mod error;
mod group;
mod lattice;
mod stallings;

pub use cayley::CayleyGraph;
pub use engine::{relators, EngineKind, Inclusion, Part, SubgroupEngine};
pub use error::GroupError;
pub use group::{format_word, invert_word, parse_word, push_reduced, reduce_word, Elem, Letter, MarkedGroup, Word};
pub use lattice::{LatticeEngine, SCHREIER_BUDGET};
pub use stallings::StallingsCore;
