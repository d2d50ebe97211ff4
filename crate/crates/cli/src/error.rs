use hst_chop::ChopError;
use hst_graph::GraphError;
use hst_groups::GroupError;
use hst_pocset::PocsetError;
use hst_splitting::SplitError;
use thiserror::Error;

use crate::scenario::ScenarioError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_CAPABILITY: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Scenario { path: String, source: ScenarioError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error(transparent)]
    Pocset(#[from] PocsetError),
    #[error(transparent)]
    Chop(#[from] ChopError),
}

fn graph_code(e: &GraphError) -> i32 {
    match e {
        GraphError::Budget { .. } => EXIT_BUDGET,
        GraphError::Capability(_) => EXIT_CAPABILITY,
        _ => EXIT_FAILURE,
    }
}

fn group_code(e: &GroupError) -> i32 {
    match e {
        GroupError::Budget { .. } => EXIT_BUDGET,
        GroupError::Capability(_) => EXIT_CAPABILITY,
        _ => EXIT_FAILURE,
    }
}

fn split_code(e: &SplitError) -> i32 {
    match e {
        SplitError::Graph(g) => graph_code(g),
        SplitError::Group(g) => group_code(g),
        _ => EXIT_FAILURE,
    }
}

fn pocset_code(e: &PocsetError) -> i32 {
    match e {
        PocsetError::Budget { .. } => EXIT_BUDGET,
        PocsetError::Graph(g) => graph_code(g),
        _ => EXIT_FAILURE,
    }
}

impl CliError {
    /// 2 for capability errors, 3 for exhausted budgets, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Graph(e) => graph_code(e),
            CliError::Group(e) => group_code(e),
            CliError::Split(e) => split_code(e),
            CliError::Pocset(e) => pocset_code(e),
            CliError::Chop(e) => match e {
                ChopError::Split(e) => split_code(e),
                ChopError::Graph(e) => graph_code(e),
                ChopError::Group(e) => group_code(e),
                ChopError::Pocset(e) => pocset_code(e),
                ChopError::Capability(_) => EXIT_CAPABILITY,
                _ => EXIT_FAILURE,
            },
            CliError::Scenario { .. } | CliError::Io { .. } | CliError::Usage(_) => EXIT_FAILURE,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_errors_keep_their_class() {
        let budget = CliError::Chop(ChopError::Split(SplitError::Graph(GraphError::Budget { limit: 1, reached: 2 })));
        assert_eq!(budget.exit_code(), EXIT_BUDGET);
        let cap = CliError::Split(SplitError::Group(GroupError::Capability("x".into())));
        assert_eq!(cap.exit_code(), EXIT_CAPABILITY);
        assert_eq!(CliError::Pocset(PocsetError::Budget { limit: 3 }).exit_code(), EXIT_BUDGET);
        assert_eq!(CliError::Usage("x".into()).exit_code(), EXIT_FAILURE);
    }
}
