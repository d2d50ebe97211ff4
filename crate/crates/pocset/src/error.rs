use hst_graph::GraphError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PocsetError {
    #[error("invalid pocset: {0}")]
    Invalid(String),
    #[error("refusing exhaustive width search on {size} elements (limit {limit})")]
    TooLarge { size: usize, limit: usize },
    #[error("ultrafilter budget exceeded: more than {limit} vertices")]
    Budget { limit: usize },
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
