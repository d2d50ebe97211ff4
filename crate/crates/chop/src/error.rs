use hst_graph::GraphError;
use hst_groups::GroupError;
use hst_pocset::PocsetError;
use hst_splitting::SplitError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChopError {
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Pocset(#[from] PocsetError),
    #[error("invalid input: {0}")]
    Invalid(String),
    /// The finite window is too small to decide something.
    #[error("window too small: {0}")]
    Window(String),
    /// Two translates of the cut cross inside the window.
    #[error("cut is not nested at this scale: {0}")]
    NotNested(String),
    /// A computed object failed one of its defining properties.
    #[error("structure check failed: {0}")]
    Structure(String),
    #[error("unsupported: {0}")]
    Capability(String),
}
