use crate::ball::{BallGraph, VertexId};
use crate::cut::Cut;
use crate::error::GraphError;

pub const BRUTE_FORCE_LIMIT: usize = 16;

/// Every cut with both sides connected and `|δC| <= max_boundary`.
///
/// A cut and its complement are the same cut; the side containing vertex 0
/// is reported. Output is sorted by side.
pub fn enumerate_cuts_bruteforce(ball: &BallGraph, max_boundary: u32) -> Result<Vec<Cut>, GraphError> {
    let n = ball.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(GraphError::TooLarge {
            size: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    if n < 2 {
        return Ok(Vec::new());
    }
    let full: u32 = (1u32 << n) - 1;
    let mut out = Vec::new();
    for bits in (1..full).filter(|b| b & 1 == 1) {
        let mask: Vec<bool> = (0..n).map(|v| bits >> v & 1 == 1).collect();
        let boundary: u32 = ball
            .edges()
            .iter()
            .filter(|&&(u, v, _)| mask[u] != mask[v])
            .map(|&(_, _, m)| m)
            .sum();
        if boundary > max_boundary {
            continue;
        }
        let comp: Vec<bool> = mask.iter().map(|b| !b).collect();
        if ball.is_connected_on(&mask) && ball.is_connected_on(&comp) {
            out.push(Cut::from_mask(ball, &mask));
        }
    }
    out.sort_by(|a, b| a.side.cmp(&b.side));
    Ok(out)
}

/// Minimum `|δC|` over connected-sided cuts with `s` inside and `t` outside.
pub fn bruteforce_min_separating(ball: &BallGraph, s: VertexId, t: VertexId) -> Result<Option<u32>, GraphError> {
    let cuts = enumerate_cuts_bruteforce(ball, u32::MAX)?;
    Ok(cuts
        .iter()
        .filter(|c| c.contains(s) != c.contains(t))
        .map(Cut::size)
        .min())
}
