use hst_pocset::{cube, io::cube_to_dot, CubeSkeleton};
use hst_splitting::GElem;
use serde::Serialize;

use crate::error::ChopError;
use crate::order::{ChopGeometry, Half, OrderEngine, PElement, RefinedPocset};
use crate::window::{SplitGeometry, TreeWindow};

/// The cubing of the refined pocset and its comparison with the tree of the
/// splitting.
#[derive(Clone, Debug, Serialize)]
pub struct RefinedTree {
    #[serde(skip)]
    pub skeleton: CubeSkeleton,
    pub vertices: usize,
    pub edges: usize,
    pub is_tree: bool,
    /// Image of every refined vertex in the tree window.
    pub collapse: Vec<usize>,
    /// Tree-window vertices hit by the collapse.
    pub collapse_hits: usize,
    /// Refined edges sharing an element pair (none in a cubing).
    pub repeated_edge_labels: usize,
}

impl RefinedTree {
    pub fn dot(&self, refined: &RefinedPocset) -> String {
        cube_to_dot(&refined.pocset, &self.skeleton)
    }
}

/// Cubes the refined pocset and maps every vertex to the tree-window vertex
/// lying in all the halves its chosen elements are paired with.
pub fn refine_tree(
    refined: &RefinedPocset,
    tree: &TreeWindow,
    budget: Option<usize>,
) -> Result<RefinedTree, ChopError> {
    let skeleton = cube(&refined.pocset, budget)?;
    let is_tree = skeleton.is_tree();
    let mut collapse = Vec::with_capacity(skeleton.vertices.len());
    for u in &skeleton.vertices {
        let mut positive = vec![None::<bool>; tree.len()];
        for (i, el) in refined.elements.iter().enumerate() {
            if !u.contains(i) {
                continue;
            }
            let h = el.half();
            let choose = match el {
                PElement::Plain(_) => Some(h.positive),
                PElement::ClassSide { .. } => Some(true),
                PElement::CoClassSide { .. } => None,
            };
            if let Some(c) = choose {
                if positive[h.edge].is_some_and(|p| p != c) {
                    return Err(ChopError::Structure(format!(
                        "refined vertex {} picks both halves of {}",
                        collapse.len(),
                        tree.labels[h.edge]
                    )));
                }
                positive[h.edge] = Some(c);
            }
        }
        let halves: Vec<Half> = positive
            .iter()
            .enumerate()
            .map(|(edge, p)| Half { edge, positive: p.unwrap_or(false) })
            .collect();
        let hits: Vec<usize> =
            (0..tree.vertices.len()).filter(|&v| halves.iter().all(|&h| tree.contains(h, v))).collect();
        match hits.as_slice() {
            [v] => collapse.push(*v),
            _ => {
                return Err(ChopError::Structure(format!(
                    "refined vertex {} selects {} tree-window vertices",
                    collapse.len(),
                    hits.len()
                )))
            }
        }
    }
    let mut hit = collapse.clone();
    hit.sort_unstable();
    hit.dedup();
    let mut labels: Vec<usize> = skeleton.edges.iter().map(|&(_, _, a)| a.min(refined.pocset.star(a))).collect();
    let edges = labels.len();
    labels.sort_unstable();
    labels.dedup();
    Ok(RefinedTree {
        vertices: skeleton.vertices.len(),
        edges,
        is_tree,
        collapse_hits: hit.len(),
        collapse,
        repeated_edge_labels: edges - labels.len(),
        skeleton,
    })
}

/// Order comparisons checked under one element of the halfspace
/// stabilizer, and the ones that failed.
#[derive(Clone, Debug, Serialize)]
pub struct EquivarianceCheck {
    pub element: String,
    pub compared: usize,
    pub failures: Vec<(String, String)>,
}

/// Moves an element of the refined pocset by `d`, when both the moved edge
/// and the moved class stay inside the window.
fn translate(geo: &SplitGeometry<'_>, d: &GElem, p: PElement) -> Option<PElement> {
    let s = geo.split;
    let edge = geo.tree.edges[p.edge()].rep.clone();
    let moved = s.edge_of(&s.mul(d, &edge).ok()?).ok()?;
    let target = geo.tree.index_of(&moved)?;
    match p {
        PElement::Plain(h) => Some(PElement::Plain(Half { edge: target, positive: h.positive })),
        PElement::ClassSide { class, .. } | PElement::CoClassSide { class, .. } => {
            // d·rep_E = rep_{dE}·k with k in the stabilizer of the chopped halfspace.
            let k = s.mul(&s.inv(&moved.rep).ok()?, &s.mul(d, &edge).ok()?).ok()?;
            let image = geo.act_on_class(&k, class)?;
            if !geo.deep_classes().contains(&image) {
                return None;
            }
            Some(match p {
                PElement::ClassSide { .. } => PElement::ClassSide { edge: target, class: image },
                _ => PElement::CoClassSide { edge: target, class: image },
            })
        }
    }
}

/// Checks that `d` preserves the order wherever both images stay inside
/// the window.
pub fn check_equivariance(
    geo: &SplitGeometry<'_>,
    engine: &OrderEngine<'_, SplitGeometry<'_>>,
    refined: &RefinedPocset,
    d: &GElem,
) -> Result<EquivarianceCheck, ChopError> {
    let moved: Vec<Option<PElement>> = refined.elements.iter().map(|&p| translate(geo, d, p)).collect();
    let mut compared = 0;
    let mut failures = Vec::new();
    for (i, mp) in moved.iter().enumerate() {
        let Some(mp) = *mp else { continue };
        for (j, mq) in moved.iter().enumerate() {
            let Some(mq) = *mq else { continue };
            compared += 1;
            if refined.pocset.le(i, j) != engine.leq(mp, mq)? {
                failures.push((refined.names[i].clone(), refined.names[j].clone()));
            }
        }
    }
    Ok(EquivarianceCheck { element: geo.split.label(d), compared, failures })
}

/// An element of the split group moving a class element strictly inside
/// itself, hence acting hyperbolically on the refined tree.
#[derive(Clone, Debug, Serialize)]
pub struct HyperbolicWitness {
    pub element: String,
    pub moved: String,
    pub image: String,
    /// Whether the image lies below the original.
    pub inward: bool,
}

/// Looks for `g = rep_E · k`, `k` in `stabilizer` (identity first), with
/// `g·([x], e₀⁺)` strictly comparable to `([x], e₀⁺)`.
pub fn hyperbolic_witness(
    geo: &SplitGeometry<'_>,
    refined: &RefinedPocset,
    stabilizer: &[GElem],
) -> Result<Option<HyperbolicWitness>, ChopError> {
    let s = geo.split;
    let engine = OrderEngine::new(geo);
    let base = geo.tree.index_of(&s.base_edge()).unwrap_or(0);
    let mut ks = vec![s.identity()];
    ks.extend(stabilizer.iter().cloned());
    for &x in &geo.deep_classes() {
        let p = PElement::ClassSide { edge: base, class: x };
        for k in &ks {
            let Some(z) = geo.act_on_class(k, x) else { continue };
            if refined.index_of(PElement::ClassSide { edge: base, class: z }).is_none() {
                continue;
            }
            for e in (0..geo.tree.len()).filter(|&e| e != base) {
                let q = PElement::ClassSide { edge: e, class: z };
                let (below, above) = (engine.leq(q, p)?, engine.leq(p, q)?);
                if below || above {
                    let g = s.mul(&geo.tree.edges[e].rep, k)?;
                    return Ok(Some(HyperbolicWitness {
                        element: s.label(&g),
                        moved: p.name(geo),
                        image: q.name(geo),
                        inward: below,
                    }));
                }
            }
        }
    }
    Ok(None)
}
