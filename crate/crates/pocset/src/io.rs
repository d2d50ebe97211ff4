use serde::{Deserialize, Serialize};

use crate::cube::CubeSkeleton;
use crate::error::PocsetError;
use crate::pocset::Pocset;

pub const POCSET_FORMAT: &str = "hst-pocset/1";
pub const CUBE_FORMAT: &str = "hst-cube/1";

#[derive(Serialize, Deserialize)]
struct PocsetDoc {
    format: String,
    window: bool,
    elements: Vec<String>,
    order: Vec<(usize, usize)>,
    involution: Vec<(usize, usize)>,
}

pub fn pocset_to_json(p: &Pocset) -> serde_json::Value {
    let doc = PocsetDoc {
        format: POCSET_FORMAT.into(),
        window: p.is_window(),
        elements: p.names().to_vec(),
        order: p.order_pairs(),
        involution: p.pairs().into_iter().map(|a| (a, p.star(a))).collect(),
    };
    serde_json::to_value(doc).expect("pocset documents serialize")
}

pub fn pocset_from_json(text: &str) -> Result<Pocset, PocsetError> {
    let doc: PocsetDoc = serde_json::from_str(text).map_err(|e| PocsetError::Parse(e.to_string()))?;
    if doc.format != POCSET_FORMAT {
        return Err(PocsetError::Parse(format!("unknown format {:?}", doc.format)));
    }
    let n = doc.elements.len();
    let mut star = vec![usize::MAX; n];
    for (a, b) in doc.involution {
        if a >= n || b >= n {
            return Err(PocsetError::Parse(format!("involution pair ({a}, {b}) out of range")));
        }
        star[a] = b;
        star[b] = a;
    }
    if star.contains(&usize::MAX) {
        return Err(PocsetError::Parse("an element has no partner".into()));
    }
    Pocset::new(doc.elements, star, &doc.order, doc.window)
}

#[derive(Serialize)]
struct CubeDoc<'a> {
    format: &'static str,
    window: bool,
    dimension: Option<usize>,
    vertices: Vec<Vec<&'a str>>,
    edges: Vec<(usize, usize, &'a str)>,
}

/// Vertices are listed by the names of their chosen elements; edges name
/// the element on the lower-indexed side of the pair they cross.
pub fn cube_to_json(pocset: &Pocset, skeleton: &CubeSkeleton) -> serde_json::Value {
    let doc = CubeDoc {
        format: CUBE_FORMAT,
        window: skeleton.window,
        dimension: skeleton.dimension,
        vertices: skeleton
            .vertices
            .iter()
            .map(|u| u.chosen().into_iter().map(|a| pocset.name(a)).collect())
            .collect(),
        edges: skeleton.edges.iter().map(|&(u, v, a)| (u, v, pocset.name(a))).collect(),
    };
    serde_json::to_value(doc).expect("cube documents serialize")
}

pub fn cube_to_dot(pocset: &Pocset, skeleton: &CubeSkeleton) -> String {
    let mut out = String::from("graph cube {\n");
    for i in 0..skeleton.len() {
        out.push_str(&format!("  v{i};\n"));
    }
    for &(u, v, a) in &skeleton.edges {
        out.push_str(&format!("  v{u} -- v{v} [label={:?}];\n", pocset.name(a)));
    }
    out.push_str("}\n");
    out
}
