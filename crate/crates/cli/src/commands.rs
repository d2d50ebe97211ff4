//! The subcommands, as functions from inputs to a rendered [`Output`].

use std::collections::HashMap;
use std::fmt::Write as _;

use hst_chop::{iterate_chop, ChopParams, ChopReport, RoundOutcome, SplittingSummary};
use hst_graph::{default_budget, end_report, grow_ball, io as graph_io, min_vertex_set_cut, BallGraph, EndReport, GraphError};
use hst_groups::CayleyGraph;
use hst_pocset::{cube, io as pocset_io};
use hst_splitting::{cayley_window, halfspace_window, syntactic_checks};
use serde::Serialize;
use serde_json::Value;

use crate::error::{CliError, EXIT_BUDGET, EXIT_CAPABILITY, EXIT_OK};
use crate::scenario::{parse_scenario, Scenario, Target};

pub const DEFAULT_INNER: u32 = 1;
pub const DEFAULT_PROBE: u32 = 4;
pub const DEFAULT_ROUNDS: usize = 3;

/// A rendered command result.
#[derive(Clone, Debug)]
pub struct Output {
    pub text: String,
    pub json: Value,
    pub dot: Option<String>,
    pub code: i32,
}

/// Flags shared by the scenario commands; unset flags fall back to the
/// scenario file, then to the defaults.
#[derive(Clone, Debug, Default)]
pub struct ProbeFlags {
    pub inner: Option<u32>,
    pub probe: Option<u32>,
    pub budget: Option<usize>,
    pub rounds: Option<usize>,
    pub side: Option<String>,
    pub dot: bool,
}

struct Resolved {
    inner: u32,
    probe: u32,
    budget: usize,
    rounds: usize,
}

fn resolve(s: &Scenario, f: &ProbeFlags) -> Result<Resolved, CliError> {
    let r = Resolved {
        inner: f.inner.or(s.probe.inner).unwrap_or(DEFAULT_INNER),
        probe: f.probe.or(s.probe.radius).unwrap_or(DEFAULT_PROBE),
        budget: f.budget.or(s.probe.budget).unwrap_or_else(default_budget),
        rounds: f.rounds.or(s.probe.rounds).unwrap_or(DEFAULT_ROUNDS),
    };
    if r.probe <= r.inner {
        return Err(CliError::Usage(format!("probe radius {} must exceed inner radius {}", r.probe, r.inner)));
    }
    Ok(r)
}

pub fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })
}

pub fn load_scenario(path: &str) -> Result<Scenario, CliError> {
    parse_scenario(&read(path)?).map_err(|source| CliError::Scenario { path: path.to_string(), source })
}

#[derive(Serialize)]
struct EndsDoc<'a> {
    format: &'static str,
    scenario: &'a str,
    target: &'static str,
    side: Option<&'static str>,
    points: usize,
    report: EndReport,
    verdict: String,
}

/// Ends of the group's Cayley graph, or of one halfspace window when a side
/// is given.
pub fn ends(s: &Scenario, f: &ProbeFlags) -> Result<Output, CliError> {
    let p = resolve(s, f)?;
    let side_name = f.side.clone().or_else(|| s.probe.side.clone());
    let side = match &side_name {
        Some(n) if s.splitting().is_none() => {
            return Err(CliError::Usage(format!("side {n:?} given but the scenario has no splitting")))
        }
        Some(n) => Some(s.side(n).ok_or_else(|| CliError::Usage(format!("unknown side {n:?}")))?),
        None => None,
    };
    let (points, report) = match (&s.target, side) {
        (Target::Group { group, .. }, _) => {
            let cayley = CayleyGraph::standard(group);
            let ball = grow_ball(&cayley, &cayley.identity(), p.probe, Some(p.budget))?;
            (ball.graph.len(), end_report(&ball.graph, p.inner, None)?)
        }
        (Target::Splitting { split, .. }, None) => {
            let split = split.as_ref().map_err(|e| e.clone())?;
            let ball = cayley_window(split, &split.identity(), p.probe, Some(p.budget))?;
            (ball.graph.len(), end_report(&ball.graph, p.inner, None)?)
        }
        (Target::Splitting { split, .. }, Some(side)) => {
            let split = split.as_ref().map_err(|e| e.clone())?;
            let ball = halfspace_window(split, &split.identity(), side, p.probe, Some(p.budget))?;
            (ball.points.len(), ball.ends(p.inner, None)?)
        }
    };
    let verdict = end_verdict(&report, side.is_some());
    let target = if side.is_some() { "halfspace" } else { "cayley" };
    let mut text = String::new();
    let what = match side {
        Some(h) => format!("{} halfspace window", h.name()),
        None => "Cayley graph window".to_string(),
    };
    let _ = writeln!(text, "{}: {what}, r = {}, R = {}, {points} points", s.name, p.inner, p.probe);
    let _ = writeln!(text, "{}", report.summary());
    let _ = writeln!(text, "{verdict}");
    let doc = EndsDoc {
        format: "hst-ends/1",
        scenario: &s.name,
        target,
        side: side.map(|h| h.name()),
        points,
        report,
        verdict,
    };
    Ok(Output { text, json: to_value(&doc), dot: None, code: EXIT_OK })
}

fn end_verdict(r: &EndReport, halfspace: bool) -> String {
    let tag = if r.stable { "stable" } else { "unstable" };
    let n = r.unbounded_count;
    match (n, halfspace) {
        (0, _) => format!("no unbounded component ({tag}): the window looks finite"),
        (1, true) => format!("1 unbounded component ({tag}): one-ended at this scale"),
        (_, true) => format!("≥2 unbounded components ({tag}): not one-ended at this scale"),
        (1, false) => format!("1 end ({tag})"),
        (2, false) => format!("2 ends ({tag})"),
        (_, false) => format!("more than two ends ({n} unbounded components, {tag})"),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn describe_splitting(s: &SplittingSummary) -> String {
    match (&s.right, &s.stable) {
        (Some(r), _) => format!("{} *_{} {}", s.left, s.edge, r),
        (None, Some(t)) => format!("{} *_{} with stable letter {t}", s.left, s.edge),
        (None, None) => format!("{} *_{}", s.left, s.edge),
    }
}

/// Chops multi-ended halfspaces round by round.
pub fn chop(s: &Scenario, f: &ProbeFlags) -> Result<Output, CliError> {
    let Some(split) = s.splitting() else {
        return Err(CliError::Usage("chop needs a scenario with a [splitting]".into()));
    };
    let split = split.map_err(|e| e.clone())?;
    let p = resolve(s, f)?;
    let params = ChopParams {
        inner: p.inner,
        radius: p.probe,
        budget: Some(p.budget),
        max_rounds: p.rounds,
        dot: f.dot,
        ..ChopParams::default()
    };
    let report = iterate_chop(split, &params)?;
    let stopped = report.rounds.iter().any(|r| matches!(r.outcome, RoundOutcome::Stopped { .. }));
    let code = if report.terminated {
        EXIT_OK
    } else if stopped {
        EXIT_CAPABILITY
    } else {
        EXIT_BUDGET
    };
    let dot = f.dot.then(|| chop_dot(&report));
    Ok(Output { text: chop_text(s, &report), json: to_value(&report), dot, code })
}

fn chop_dot(report: &ChopReport) -> String {
    let mut out = String::new();
    for r in &report.rounds {
        for (kind, d) in [("edge tree", &r.edge_tree_dot), ("refined tree", &r.refined_dot)] {
            if let Some(d) = d {
                let _ = writeln!(out, "// round {} {kind}", r.round);
                out.push_str(d);
            }
        }
    }
    out
}

fn chop_text(s: &Scenario, report: &ChopReport) -> String {
    let mut t = String::new();
    let pr = &report.params;
    let _ = writeln!(
        t,
        "chop {}: r = {}, R = {}, at most {} rounds",
        s.name, pr.inner, pr.radius, pr.max_rounds
    );
    for r in &report.rounds {
        let _ = writeln!(t, "round {} on {}:", r.round, r.splitting);
        for probe in &r.probes {
            let _ = writeln!(t, "  {} halfspace: {} points, {}", probe.side.name(), probe.points, probe.ends.summary());
        }
        if let Some(side) = r.chopped {
            let _ = writeln!(t, "  chopping the {} halfspace", side.name());
        }
        if let Some(c) = &r.cut {
            let _ = writeln!(
                t,
                "  cut: boundary {} with wall weight {}, {} points inside",
                c.size, c.wall_weight, c.side_points
            );
        }
        if let Some(e) = &r.edge_tree {
            let _ = writeln!(
                t,
                "  edge tree: {} vertices, {} deep classes, base class degree {}",
                e.vertices, e.deep_classes, e.base_class_degree
            );
        }
        if let Some(x) = &r.refined {
            let _ = writeln!(
                t,
                "  refined tree: {} vertices, {} edges over a tree window of {} edges",
                x.vertices, x.edges, x.tree_window.edges
            );
        }
        for c in &r.checks {
            let mark = if c.pass { "pass" } else { "FAIL" };
            let _ = writeln!(t, "  [{mark}] {}", c.name);
            if !c.pass {
                let _ = writeln!(t, "         {}", c.detail);
            }
        }
        let outcome = match &r.outcome {
            RoundOutcome::OneEnded => "every halfspace window is one-ended".to_string(),
            RoundOutcome::Chopped { next } => format!("new splitting {}: {}", next.name, describe_splitting(next)),
            RoundOutcome::Stopped { reason } => format!("stopped: {reason}"),
        };
        let _ = writeln!(t, "  outcome: {outcome}");
    }
    let n = plural(report.rounds.len(), "round");
    let chops = plural(report.chop_count(), "chop");
    let last = if report.terminated && report.chop_count() == 0 {
        "no chop needed: every halfspace window is one-ended at this scale".to_string()
    } else if report.terminated {
        format!("finished after {n} with {chops}; the final halfspace windows are one-ended")
    } else if report.rounds.iter().any(|r| matches!(r.outcome, RoundOutcome::Stopped { .. })) {
        format!("stopped after {n} with {chops}")
    } else {
        format!("round limit reached after {n} with {chops}")
    };
    let _ = writeln!(t, "{last}");
    let _ = writeln!(t, "final splitting {}: {}", report.final_splitting.name, describe_splitting(&report.final_splitting));
    t
}

fn plural(n: usize, noun: &str) -> String {
    if n == 1 {
        format!("1 {noun}")
    } else {
        format!("{n} {noun}s")
    }
}

#[derive(Serialize)]
struct CheckDoc<'a> {
    format: &'static str,
    scenario: &'a str,
    report: hst_splitting::CheckReport,
}

/// Structural pattern checks on the declaration.
pub fn check(s: &Scenario, f: &ProbeFlags) -> Result<Output, CliError> {
    let Some(decl) = s.decl() else {
        return Err(CliError::Usage("check needs a scenario with a [splitting]".into()));
    };
    let p = resolve(s, f)?;
    let report = syntactic_checks(decl, p.inner, p.probe, Some(p.budget))?;
    let mut text = format!("{}:\n", s.name);
    for l in report.lines() {
        let _ = writeln!(text, "{l}");
    }
    if !report.central_stable.matched && !report.double.matched {
        let _ = writeln!(text, "no pattern matched; nothing is concluded");
    }
    let doc = CheckDoc { format: "hst-check/1", scenario: &s.name, report };
    Ok(Output { text, json: to_value(&doc), dot: None, code: EXIT_OK })
}

/// Cubes a pocset file.
pub fn cube_file(text: &str, budget: Option<usize>) -> Result<Output, CliError> {
    let pocset = pocset_io::pocset_from_json(text)?;
    let skeleton = cube(&pocset, budget)?;
    let max_degree = skeleton.adjacency().iter().map(Vec::len).max().unwrap_or(0);
    let shape = match (skeleton.is_tree(), max_degree <= 2) {
        (true, true) => "path",
        (true, false) => "tree",
        (false, _) => "not a tree",
    };
    let dim = skeleton.dimension.map_or("unknown".to_string(), |d| d.to_string());
    let text = format!(
        "{} vertices, {} edges, dimension {dim}, shape: {shape}\n",
        skeleton.len(),
        skeleton.edges.len()
    );
    Ok(Output {
        text,
        json: pocset_io::cube_to_json(&pocset, &skeleton),
        dot: Some(pocset_io::cube_to_dot(&pocset, &skeleton)),
        code: EXIT_OK,
    })
}

/// Reads a graph given as `hst-ball/1` JSON or as an edge list: one
/// `u v [multiplicity]` line per edge, `#` starting a comment.
pub fn parse_graph(text: &str) -> Result<BallGraph, GraphError> {
    if text.trim_start().starts_with('{') {
        return graph_io::from_json(text);
    }
    let mut labels: Vec<String> = Vec::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse = |msg: String| GraphError::Parse { line: i + 1, msg };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let (u, v, m) = match tokens.as_slice() {
            [u, v] => (*u, *v, 1),
            [u, v, m] => (*u, *v, m.parse().map_err(|_| parse(format!("bad multiplicity {m:?}")))?),
            _ => return Err(parse("expected `u v [multiplicity]`".into())),
        };
        if u == v {
            return Err(parse(format!("self-loop at {u}")));
        }
        let mut id = |l: &str| {
            *ids.entry(l.to_string()).or_insert_with(|| {
                labels.push(l.to_string());
                labels.len() - 1
            })
        };
        let (a, b) = (id(u), id(v));
        edges.push((a, b, m));
    }
    let n = labels.len();
    BallGraph::from_edges(labels, vec![0; n], 0, &edges)
}

#[derive(Serialize)]
struct MincutDoc<'a> {
    format: &'static str,
    source: &'a str,
    sink: &'a str,
    size: u32,
    wall_weight: u32,
    side: Vec<&'a str>,
    boundary: Vec<(&'a str, &'a str, u32)>,
}

/// Minimum edge cut between two labelled vertices.
pub fn mincut(graph: &BallGraph, source: &str, sink: &str) -> Result<Output, CliError> {
    let find = |l: &str| graph.id_of(l).ok_or_else(|| CliError::Usage(format!("no vertex labelled {l:?}")));
    let (s, t) = (find(source)?, find(sink)?);
    if s == t {
        return Err(CliError::Usage("source and sink coincide".into()));
    }
    let cut = min_vertex_set_cut(graph, &[s], &[t])?;
    let doc = MincutDoc {
        format: "hst-mincut/1",
        source,
        sink,
        size: cut.size(),
        wall_weight: cut.wall_weight,
        side: cut.side.iter().map(|&v| graph.label(v)).collect(),
        boundary: cut.boundary.iter().map(|&(u, v, m)| (graph.label(u), graph.label(v), m)).collect(),
    };
    let text = format!(
        "minimum cut between {source} and {sink}: {} edges\nsource side: {}\n",
        doc.size,
        doc.side.join(" ")
    );
    Ok(Output { text, json: to_value(&doc), dot: None, code: EXIT_OK })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_lists_merge_parallel_edges() {
        let g = parse_graph("a b\nb a 2 # doubled\n\nb c\n").unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.multiplicity(0, 1), 3);
        let out = mincut(&g, "a", "c").unwrap();
        assert_eq!(out.json["size"], 1);
        assert_eq!(out.json["boundary"][0][0], "b");
    }

    #[test]
    fn bad_edge_lines_are_anchored() {
        assert_eq!(parse_graph("a b\na\n").unwrap_err(), GraphError::Parse { line: 2, msg: "expected `u v [multiplicity]`".into() });
        assert!(matches!(parse_graph("x x\n").unwrap_err(), GraphError::Parse { line: 1, .. }));
    }
}
