use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex budget exceeded: {reached} vertices discovered, limit {limit}")]
    Budget { limit: usize, reached: usize },
    #[error("capability: {0}")]
    Capability(String),
    #[error("oracle failure: {0}")]
    Oracle(String),
    #[error("sources and sinks lie in different components of the window")]
    Disconnected,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("refusing exhaustive enumeration on {size} vertices (limit {limit})")]
    TooLarge { size: usize, limit: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl GraphError {
    pub fn is_budget(&self) -> bool {
        matches!(self, GraphError::Budget { .. })
    }

    pub fn is_capability(&self) -> bool {
        matches!(self, GraphError::Capability(_))
    }
}
