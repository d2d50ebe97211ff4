use std::cmp::Ordering;

use hst_graph::{cmp_label_lists, end_report, min_vertex_set_cut, BallGraph, Cut, EndReport, VertexId};
use serde::Serialize;

use crate::error::ChopError;

/// A cut of a halfspace window: both sides connected, both reaching the
/// frontier. `cut` is measured in the unmodified window.
#[derive(Clone, Debug, Serialize)]
pub struct HalfspaceCut {
    pub cut: Cut,
    /// `|δC|` with multiplicity.
    pub size: u32,
    /// Boundary edges lying in the wall, `W(C)`.
    pub wall_weight: u32,
    /// Shortlex-sorted labels of the side.
    pub side_labels: Vec<String>,
    /// Labelled boundary edges `(inside, outside)`.
    pub boundary_labels: Vec<(String, String)>,
    /// Violations of the expected shape of a minimal cut (wall split into
    /// two frontier-reaching pieces, at least one wall edge on the
    /// boundary). Nonempty means the window is too small or the input is
    /// not a halfspace of a one-ended space.
    pub anomalies: Vec<String>,
}

impl HalfspaceCut {
    pub fn new(window: &BallGraph, cut: Cut) -> Self {
        let size = cut.size();
        let wall_weight = cut.wall_weight;
        let side_labels = cut.label_key(window);
        let boundary_labels = cut
            .boundary
            .iter()
            .map(|&(u, v, _)| (window.label(u).to_string(), window.label(v).to_string()))
            .collect();
        let anomalies = anomalies(window, &cut);
        HalfspaceCut { cut, size, wall_weight, side_labels, boundary_labels, anomalies }
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        self.cut.mask(n)
    }

    fn key_cmp(&self, other: &HalfspaceCut) -> Ordering {
        (self.size, self.wall_weight)
            .cmp(&(other.size, other.wall_weight))
            .then_with(|| cmp_label_lists(&self.side_labels, &other.side_labels))
    }
}

fn anomalies(window: &BallGraph, cut: &Cut) -> Vec<String> {
    let mut out = Vec::new();
    let radius = window.radius();
    let inside = cut.mask(window.len());
    let wall = window.wall_vertices();
    let reaches = |want: bool| wall.iter().any(|&v| inside[v] == want && window.dist(v) == radius);
    if !reaches(true) {
        out.push("wall inside the cut does not reach the frontier".to_string());
    }
    if !reaches(false) {
        out.push("wall outside the cut does not reach the frontier".to_string());
    }
    if cut.wall_weight == 0 {
        out.push("no wall edge on the cut boundary".to_string());
    }
    if !cut.sides_connected(window) {
        out.push("a side of the cut is disconnected".to_string());
    }
    let frontier = |want: bool| (0..window.len()).any(|v| inside[v] == want && window.dist(v) == radius);
    if !frontier(true) || !frontier(false) {
        out.push("a side of the cut misses the frontier".to_string());
    }
    out
}

/// Frontier-reaching components of the shell `B(R) \ B(inner)`.
pub fn frontier_components(window: &BallGraph, inner: u32) -> Vec<Vec<VertexId>> {
    let radius = window.radius();
    let mask: Vec<bool> = window.distances().iter().map(|&d| d > inner).collect();
    window
        .components_of(&mask)
        .into_iter()
        .filter(|c| c.iter().any(|&v| window.dist(v) == radius))
        .collect()
}

/// Replaces every wall edge by `n` parallel edges and recomputes the stored
/// cuts. Both `|δC|` and `W(C)` grow by exactly `(n-1)·W(C)`; this is
/// checked for every cut.
pub fn multiedge_modify(window: &BallGraph, n: u32, cuts: &[Cut]) -> Result<(BallGraph, Vec<Cut>), ChopError> {
    if n == 0 {
        return Err(ChopError::Invalid("multi-edge factor must be at least 1".into()));
    }
    let scaled = window.scale_wall_edges(n);
    let mut out = Vec::with_capacity(cuts.len());
    for c in cuts {
        let old = Cut::from_side(window, &c.side);
        let new = old.reweigh(&scaled);
        let grow = (n - 1) * old.wall_weight;
        if new.size() != old.size() + grow || new.wall_weight != old.wall_weight + grow {
            return Err(ChopError::Structure(format!(
                "multi-edge bookkeeping: |δC| {} -> {}, W {} -> {} with n = {n}",
                old.size(),
                new.size(),
                old.wall_weight,
                new.wall_weight
            )));
        }
        out.push(new);
    }
    Ok((scaled, out))
}

/// Outcome of the cut search on one halfspace window.
#[derive(Clone, Debug, Serialize)]
pub struct CutSearch {
    pub ends: EndReport,
    /// Every distinct pairwise minimum cut, best first, measured in the
    /// unmodified window.
    pub candidates: Vec<HalfspaceCut>,
    /// Smallest wall weight among the pairwise cuts, and the smallest
    /// boundary among cuts of that wall weight.
    pub min_wall_weight: u32,
    pub min_boundary_at_min_wall: u32,
    /// Wall-edge multiplicity used for the final search.
    pub multiplicity: u32,
    /// `|δC|` of the winner in the modified window, and the value
    /// predicted from the unmodified search.
    pub modified_size: u32,
    pub predicted_modified_size: u32,
}

impl CutSearch {
    pub fn best(&self) -> &HalfspaceCut {
        &self.candidates[0]
    }
}

fn pairwise_cuts(window: &BallGraph, comps: &[Vec<VertexId>]) -> Result<Vec<Cut>, ChopError> {
    let mut cuts: Vec<Cut> = Vec::new();
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            let cut = min_vertex_set_cut(window, &comps[i], &comps[j])?;
            if !cuts.iter().any(|c| c.side == cut.side) {
                cuts.push(cut);
            }
        }
    }
    Ok(cuts)
}

fn ranked(window: &BallGraph, cuts: Vec<Cut>) -> Vec<HalfspaceCut> {
    let mut out: Vec<HalfspaceCut> = cuts.into_iter().map(|c| HalfspaceCut::new(window, c)).collect();
    out.sort_by(|a, b| a.key_cmp(b));
    out
}

/// Searches a halfspace window for a minimal cut. Returns `None` when fewer
/// than two components of `B(R) \ B(inner)` reach the frontier.
///
/// Minimum cuts are computed between every pair of frontier components.
/// A first pass on the window finds the least wall weight `w` and the least
/// boundary `N` among cuts of that weight; wall edges are then replicated
/// `N + 1` times and the search repeated, which makes every boundary-minimal
/// cut also wall-minimal. Ties go to smaller wall weight, then to the
/// shortlex-least side.
pub fn find_halfspace_cut(window: &BallGraph, inner: u32) -> Result<Option<CutSearch>, ChopError> {
    let ends = end_report(window, inner, None)?;
    if ends.unbounded_count < 2 {
        return Ok(None);
    }
    let comps = frontier_components(window, inner);
    let first = ranked(window, pairwise_cuts(window, &comps)?);
    let w = first.iter().map(|c| c.wall_weight).min().unwrap_or(0);
    let big_n = first.iter().filter(|c| c.wall_weight == w).map(|c| c.size).min().unwrap_or(0);
    let n = big_n + 1;
    let scaled = window.scale_wall_edges(n);
    let second = pairwise_cuts(&scaled, &comps)?;
    let mut scored: Vec<(u32, HalfspaceCut)> = second
        .into_iter()
        .map(|c| (c.size(), HalfspaceCut::new(window, c.reweigh(window))))
        .collect();
    scored.sort_by(|(sa, a), (sb, b)| sa.cmp(sb).then_with(|| a.wall_weight.cmp(&b.wall_weight)).then_with(|| cmp_label_lists(&a.side_labels, &b.side_labels)));
    let modified_size = scored[0].0;
    let mut candidates: Vec<HalfspaceCut> = scored.into_iter().map(|(_, c)| c).collect();
    for c in first {
        if !candidates.iter().any(|d| d.cut.side == c.cut.side) {
            candidates.push(c);
        }
    }
    Ok(Some(CutSearch {
        ends,
        candidates,
        min_wall_weight: w,
        min_boundary_at_min_wall: big_n,
        multiplicity: n,
        modified_size,
        predicted_modified_size: big_n + (n - 1) * w,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Path `-r..=r` with `0` at the centre.
    fn line(r: i32, wall: bool) -> BallGraph {
        let labels = (-r..=r).map(|i| i.to_string()).collect();
        let dist = (-r..=r).map(|i| i.unsigned_abs()).collect();
        let edges: Vec<_> = (0..2 * r as usize).map(|i| (i, i + 1, 1)).collect();
        let mut g = BallGraph::from_edges(labels, dist, r as u32, &edges).unwrap();
        if wall {
            g.set_wall(vec![true; 2 * r as usize + 1]).unwrap();
        }
        g
    }

    #[test]
    fn two_rays_cut_once() {
        let g = line(4, false);
        let search = find_halfspace_cut(&g, 0).unwrap().unwrap();
        let best = search.best();
        assert_eq!(best.size, 1);
        assert_eq!(best.wall_weight, 0);
        assert!(best.anomalies.iter().any(|a| a.contains("no wall edge")));
        // The cut lies between the two rays; only the centre may join either.
        let neg = best.side_labels.iter().any(|l| l.starts_with('-'));
        let pos = best.side_labels.iter().any(|l| !l.starts_with('-') && l != "0");
        assert!(neg != pos);
    }

    #[test]
    fn line_as_wall_has_no_anomaly() {
        let g = line(4, true);
        let search = find_halfspace_cut(&g, 0).unwrap().unwrap();
        assert_eq!(search.best().wall_weight, 1);
        assert!(search.best().anomalies.is_empty(), "{:?}", search.best().anomalies);
        assert_eq!(search.modified_size, search.predicted_modified_size);
    }

    #[test]
    fn one_ended_window_has_no_cut() {
        let labels = (0..5).map(|i| i.to_string()).collect();
        let g = BallGraph::from_edges(labels, vec![0, 1, 2, 3, 4], 4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1)]).unwrap();
        assert!(find_halfspace_cut(&g, 0).unwrap().is_none());
    }

    #[test]
    fn multiedge_identity() {
        let g = line(3, true);
        let c = Cut::from_side(&g, &[0, 1, 2]);
        let (h, cuts) = multiedge_modify(&g, 1, std::slice::from_ref(&c)).unwrap();
        assert_eq!(h.edges(), g.edges());
        assert_eq!(cuts[0], c);
        assert!(multiedge_modify(&g, 0, &[]).is_err());
    }
}
