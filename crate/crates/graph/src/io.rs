//! JSON and DOT encodings of [`BallGraph`].
//!
//! JSON layout (`hst-ball/1`):
//!
//! ```text
//! { "format": "hst-ball/1", "radius": 2,
//!   "vertices": [ { "id": 0, "label": "1", "dist": 0, "wall": false }, ... ],
//!   "edges": [ [0, 1, 1], ... ],          // u < v, multiplicity
//!   "frontier": [ 5, 6, ... ] }
//! ```
//!
//! DOT layout: one `id [label=.., dist=..]` line per vertex, frontier vertices
//! drawn filled, wall vertices drawn red, one `u -- v [mult=..]` line per edge.
//! Only DOT produced by [`to_dot`] is accepted by [`from_dot`].

use serde::{Deserialize, Serialize};

use crate::ball::BallGraph;
use crate::error::GraphError;

pub const BALL_FORMAT: &str = "hst-ball/1";

#[derive(Serialize, Deserialize)]
struct VertexJson {
    id: usize,
    label: String,
    dist: u32,
    #[serde(default)]
    wall: bool,
}

#[derive(Serialize, Deserialize)]
struct BallJson {
    format: String,
    radius: u32,
    vertices: Vec<VertexJson>,
    edges: Vec<(usize, usize, u32)>,
    frontier: Vec<usize>,
}

pub fn to_json_value(ball: &BallGraph) -> serde_json::Value {
    let doc = BallJson {
        format: BALL_FORMAT.to_string(),
        radius: ball.radius(),
        vertices: (0..ball.len())
            .map(|v| VertexJson {
                id: v,
                label: ball.label(v).to_string(),
                dist: ball.dist(v),
                wall: ball.is_wall(v),
            })
            .collect(),
        edges: ball.edges(),
        frontier: ball.frontier(),
    };
    serde_json::to_value(doc).expect("ball encodes")
}

pub fn to_json(ball: &BallGraph) -> String {
    serde_json::to_string_pretty(&to_json_value(ball)).expect("ball encodes")
}

pub fn from_json(text: &str) -> Result<BallGraph, GraphError> {
    let doc: BallJson = serde_json::from_str(text).map_err(|e| GraphError::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    if doc.format != BALL_FORMAT {
        return Err(GraphError::Invalid(format!("unknown format {:?}", doc.format)));
    }
    for (i, v) in doc.vertices.iter().enumerate() {
        if v.id != i {
            return Err(GraphError::Invalid(format!("vertex ids must be 0..n, found {}", v.id)));
        }
    }
    let labels = doc.vertices.iter().map(|v| v.label.clone()).collect();
    let dist = doc.vertices.iter().map(|v| v.dist).collect();
    let mut ball = BallGraph::from_edges(labels, dist, doc.radius, &doc.edges)?;
    ball.set_wall(doc.vertices.iter().map(|v| v.wall).collect())?;
    if ball.frontier() != doc.frontier {
        return Err(GraphError::Invalid("frontier does not match distances".into()));
    }
    Ok(ball)
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

pub fn to_dot(ball: &BallGraph) -> String {
    let mut out = format!("graph ball {{\n  // {BALL_FORMAT} radius={}\n", ball.radius());
    for v in 0..ball.len() {
        let mut attrs = format!("label={}, dist={}", quote(ball.label(v)), ball.dist(v));
        if ball.is_frontier(v) {
            attrs.push_str(", frontier=true, style=filled, fillcolor=lightgrey");
        }
        if ball.is_wall(v) {
            attrs.push_str(", wall=true, color=red");
        }
        out.push_str(&format!("  {v} [{attrs}];\n"));
    }
    for (u, v, m) in ball.edges() {
        let width = if m > 1 { format!(", penwidth={m}") } else { String::new() };
        out.push_str(&format!("  {u} -- {v} [mult={m}{width}];\n"));
    }
    out.push_str("}\n");
    out
}

/// Splits `k=v, k="v"` attribute lists, honouring quotes.
fn parse_attrs(s: &str, line: usize) -> Result<Vec<(String, String)>, GraphError> {
    let err = |msg: &str| GraphError::Parse {
        line,
        msg: msg.to_string(),
    };
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    loop {
        while matches!(chars.peek(), Some(' ') | Some(',')) {
            chars.next();
        }
        if chars.peek().is_none() {
            break;
        }
        let key: String = chars.by_ref().take_while(|&c| c != '=').collect();
        let mut val = String::new();
        if chars.peek() == Some(&'"') {
            chars.next();
            let mut closed = false;
            while let Some(c) = chars.next() {
                match c {
                    '\\' => val.push(chars.next().ok_or_else(|| err("dangling escape"))?),
                    '"' => {
                        closed = true;
                        break;
                    }
                    c => val.push(c),
                }
            }
            if !closed {
                return Err(err("unterminated string"));
            }
        } else {
            while let Some(&c) = chars.peek() {
                if c == ',' {
                    break;
                }
                val.push(c);
                chars.next();
            }
        }
        out.push((key.trim().to_string(), val.trim().to_string()));
    }
    Ok(out)
}

pub fn from_dot(text: &str) -> Result<BallGraph, GraphError> {
    let mut radius = None;
    let mut labels = Vec::new();
    let mut dist = Vec::new();
    let mut wall = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if let Some(rest) = t.strip_prefix("//") {
            if let Some(r) = rest.trim().strip_prefix(BALL_FORMAT) {
                let r = r.trim().strip_prefix("radius=").ok_or(GraphError::Parse {
                    line,
                    msg: "missing radius".into(),
                })?;
                radius = Some(r.parse().map_err(|_| GraphError::Parse {
                    line,
                    msg: "bad radius".into(),
                })?);
            }
            continue;
        }
        if t.is_empty() || t.starts_with("graph") || t == "}" {
            continue;
        }
        let body = t.strip_suffix(';').ok_or(GraphError::Parse {
            line,
            msg: "expected ';'".into(),
        })?;
        let (head, attrs) = body
            .split_once('[')
            .and_then(|(h, a)| a.strip_suffix(']').map(|a| (h.trim(), a)))
            .ok_or(GraphError::Parse {
                line,
                msg: "expected attribute list".into(),
            })?;
        let attrs = parse_attrs(attrs, line)?;
        let get = |k: &str| attrs.iter().find(|(key, _)| key == k).map(|(_, v)| v.as_str());
        let num = |s: &str| {
            s.trim().parse::<usize>().map_err(|_| GraphError::Parse {
                line,
                msg: format!("bad number {s:?}"),
            })
        };
        if let Some((u, v)) = head.split_once("--") {
            let m = get("mult").map(num).transpose()?.unwrap_or(1) as u32;
            edges.push((num(u)?, num(v)?, m));
        } else {
            let id = num(head)?;
            if id != labels.len() {
                return Err(GraphError::Parse {
                    line,
                    msg: "vertices must be listed in id order".into(),
                });
            }
            labels.push(get("label").unwrap_or_default().to_string());
            dist.push(get("dist").map(num).transpose()?.unwrap_or(0) as u32);
            wall.push(get("wall") == Some("true"));
        }
    }
    let radius = radius.ok_or(GraphError::Parse {
        line: 1,
        msg: "missing format comment".into(),
    })?;
    let mut ball = BallGraph::from_edges(labels, dist, radius, &edges)?;
    ball.set_wall(wall)?;
    Ok(ball)
}
