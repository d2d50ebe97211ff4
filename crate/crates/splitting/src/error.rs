use hst_graph::GraphError;
use hst_groups::GroupError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("containment: {0}")]
    Containment(String),
    #[error("trivial splitting: {0}")]
    Trivial(String),
    #[error("invalid splitting: {0}")]
    Invalid(String),
}

impl SplitError {
    pub fn is_capability(&self) -> bool {
        matches!(self, SplitError::Group(GroupError::Capability(_)) | SplitError::Graph(GraphError::Capability(_)))
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, SplitError::Group(GroupError::Budget { .. }) | SplitError::Graph(GraphError::Budget { .. }))
    }
}

impl From<SplitError> for GraphError {
    fn from(e: SplitError) -> Self {
        match e {
            SplitError::Graph(g) => g,
            SplitError::Group(g) => g.into(),
            other => GraphError::Oracle(other.to_string()),
        }
    }
}
