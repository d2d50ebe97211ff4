use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::cube::Ultrafilter;
use crate::error::PocsetError;
use crate::pocset::{from_sets, Pocset};
use crate::tree::principal;

/// Pocset of a finite wallspace. Each wall is given by one of its two
/// halfspaces (a set of point indices); a wall and its complement describe
/// the same wall and are merged. Element `2i` is the `i`-th distinct wall as
/// given, `2i+1` its complement. Also returns `λ(x) = {A : x ∈ A}`.
pub fn wallspace_pocset(
    points: &[String],
    walls: &[Vec<usize>],
    window: bool,
) -> Result<(Pocset, Vec<Ultrafilter>), PocsetError> {
    let n = points.len();
    let mut seen = HashSet::new();
    let mut sets = Vec::new();
    let mut names = Vec::new();
    for (i, w) in walls.iter().enumerate() {
        let mut set = FixedBitSet::with_capacity(n);
        for &x in w {
            if x >= n {
                return Err(PocsetError::Invalid(format!("wall {i} mentions point {x} of {n}")));
            }
            set.insert(x);
        }
        let size = set.count_ones(..);
        if size == 0 || size == n {
            return Err(PocsetError::Invalid(format!("wall {i} is not a proper nonempty subset")));
        }
        let mut complement = set.clone();
        complement.toggle_range(0..n);
        if seen.contains(&set) || seen.contains(&complement) {
            continue;
        }
        let name = |s: &FixedBitSet| format!("{{{}}}", s.ones().map(|x| points[x].as_str()).collect::<Vec<_>>().join(","));
        names.push(name(&set));
        names.push(name(&complement));
        seen.insert(set.clone());
        sets.push(set);
    }
    let pocset = from_sets(names, &sets, n, window)?;
    Ok((pocset, principal(&sets, n)))
}
