use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("element does not belong to group {0}")]
    Mismatch(String),
    #[error("capability: {0}")]
    Capability(String),
    #[error("coset search budget of {limit} cosets exceeded")]
    Budget { limit: usize },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("generator name {0:?} used twice")]
    NameCollision(String),
    #[error("parse error in {input:?} at byte {pos}: {msg}")]
    Parse { input: String, pos: usize, msg: String },
    #[error("{0} is not in the subgroup")]
    NotInSubgroup(String),
    #[error("invalid: {0}")]
    Invalid(String),
}

impl From<GroupError> for hst_graph::GraphError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::Capability(m) => hst_graph::GraphError::Capability(m),
            GroupError::Budget { limit } => hst_graph::GraphError::Budget { limit, reached: limit },
            other => hst_graph::GraphError::Oracle(other.to_string()),
        }
    }
}
