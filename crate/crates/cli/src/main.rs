use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hst_cli::{commands, CliError, Output, ProbeFlags, EXIT_FAILURE};

/// Splittings, halfspaces, cuts and cubings at finite scale.
///
/// The default vertex budget comes from HST_VERTEX_BUDGET when set.
/// Exit codes: 0 success, 1 bad input, 2 unsupported case or stopped chop,
/// 3 budget exhausted (vertex, ultrafilter or round budget).
#[derive(Parser)]
#[command(name = "hst", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Probe {
    /// Inner radius r of the end probe.
    #[arg(short = 'r', long = "inner")]
    inner: Option<u32>,
    /// Window radius R.
    #[arg(short = 'R', long = "probe")]
    probe: Option<u32>,
    /// Vertex budget for every window.
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Args)]
struct Emit {
    /// Print the JSON report instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Count unbounded components of a Cayley or halfspace window.
    Ends {
        scenario: String,
        /// left, right, or the name of a vertex group.
        #[arg(long)]
        side: Option<String>,
        #[command(flatten)]
        probe: Probe,
        #[command(flatten)]
        emit: Emit,
    },
    /// Chop multi-ended halfspaces until every window is one-ended.
    Chop {
        scenario: String,
        #[arg(long)]
        rounds: Option<usize>,
        /// Write the edge trees and refined trees as DOT.
        #[arg(long, value_name = "PATH")]
        dot: Option<String>,
        #[command(flatten)]
        probe: Probe,
        #[command(flatten)]
        emit: Emit,
    },
    /// Match the declaration against structural patterns.
    Check {
        scenario: String,
        #[command(flatten)]
        probe: Probe,
        #[command(flatten)]
        emit: Emit,
    },
    /// Cube a pocset given as hst-pocset/1 JSON.
    Cube {
        pocset: String,
        /// Ultrafilter budget.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, value_name = "PATH")]
        dot: Option<String>,
        #[command(flatten)]
        emit: Emit,
    },
    /// Minimum edge cut between two vertices of a graph file.
    Mincut {
        graph: String,
        source: String,
        sink: String,
        #[command(flatten)]
        emit: Emit,
    },
}

fn flags(p: Probe) -> ProbeFlags {
    ProbeFlags { inner: p.inner, probe: p.probe, budget: p.budget, ..ProbeFlags::default() }
}

fn write(path: &str, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_string(), source })
}

/// Runs a command; returns the output and the DOT and JSON paths to write.
fn run(command: Command) -> Result<(Output, bool, Option<String>, Option<String>), CliError> {
    Ok(match command {
        Command::Ends { scenario, side, probe, emit } => {
            let s = commands::load_scenario(&scenario)?;
            let f = ProbeFlags { side, ..flags(probe) };
            (commands::ends(&s, &f)?, emit.json, None, s.output.json)
        }
        Command::Chop { scenario, rounds, dot, probe, emit } => {
            let s = commands::load_scenario(&scenario)?;
            let dot = dot.or(s.output.dot.clone());
            let f = ProbeFlags { rounds, dot: dot.is_some(), ..flags(probe) };
            (commands::chop(&s, &f)?, emit.json, dot, s.output.json)
        }
        Command::Check { scenario, probe, emit } => {
            let s = commands::load_scenario(&scenario)?;
            (commands::check(&s, &flags(probe))?, emit.json, None, s.output.json)
        }
        Command::Cube { pocset, budget, dot, emit } => {
            (commands::cube_file(&commands::read(&pocset)?, budget)?, emit.json, dot, None)
        }
        Command::Mincut { graph, source, sink, emit } => {
            let g = commands::parse_graph(&commands::read(&graph)?)?;
            (commands::mincut(&g, &source, &sink)?, emit.json, None, None)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_FAILURE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let result = run(cli.command).and_then(|(out, json, dot_path, json_path)| {
        let pretty = serde_json::to_string_pretty(&out.json).expect("reports serialize") + "\n";
        if let (Some(p), Some(d)) = (dot_path, &out.dot) {
            write(&p, d)?;
        }
        if let Some(p) = json_path {
            write(&p, &pretty)?;
        }
        if json {
            print!("{pretty}");
        } else {
            print!("{}", out.text);
        }
        Ok(out.code)
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
