//! Scenario files and the subcommands of the `hst` tool: end probes,
//! chopping, structural checks, cubing of pocset files and minimum cuts.

pub mod commands;
pub mod error;
pub mod scenario;

pub use commands::{check, chop, cube_file, ends, load_scenario, mincut, parse_graph, Output, ProbeFlags};
pub use error::{CliError, EXIT_BUDGET, EXIT_CAPABILITY, EXIT_FAILURE, EXIT_OK};
pub use scenario::{parse_scenario, Scenario, ScenarioError, Target};
