use fixedbitset::FixedBitSet;

use crate::error::PocsetError;

/// Largest pocset on which [`Pocset::width`] runs its exhaustive search.
pub const WIDTH_LIMIT: usize = 24;

/// A finite poset with an order-reversing, fixed-point-free involution
/// `a ↦ a*` such that `a` and `a*` are incomparable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pocset {
    names: Vec<String>,
    star: Vec<usize>,
    /// `above[a]` holds every `b` with `a < b`.
    above: Vec<FixedBitSet>,
    window: bool,
}

impl Pocset {
    /// Builds the pocset generated by the strict relations `less`: the
    /// relation is closed under the involution and transitivity, then
    /// checked.
    pub fn new(names: Vec<String>, star: Vec<usize>, less: &[(usize, usize)], window: bool) -> Result<Self, PocsetError> {
        let n = names.len();
        if star.len() != n {
            return Err(PocsetError::Invalid(format!("{} involution entries for {n} elements", star.len())));
        }
        for (a, &b) in star.iter().enumerate() {
            if b >= n || b == a || star[b] != a {
                return Err(PocsetError::Invalid(format!("{} has no proper partner", names[a])));
            }
        }
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for &(a, b) in less {
            if a >= n || b >= n {
                return Err(PocsetError::Invalid(format!("order pair ({a}, {b}) out of range")));
            }
            above[a].insert(b);
            above[star[b]].insert(star[a]);
        }
        for k in 0..n {
            let row = above[k].clone();
            for row_i in above.iter_mut() {
                if row_i.contains(k) {
                    row_i.union_with(&row);
                }
            }
        }
        for a in 0..n {
            if above[a].contains(a) {
                return Err(PocsetError::Invalid(format!("order has a cycle through {}", names[a])));
            }
            if above[a].contains(star[a]) || above[star[a]].contains(a) {
                return Err(PocsetError::Invalid(format!("{} is comparable with its complement", names[a])));
            }
        }
        Ok(Pocset { names, star, above, window })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn star(&self, a: usize) -> usize {
        self.star[a]
    }

    /// Whether this is a finite window onto an infinite pocset; ultrafilter
    /// properties then hold relative to the window only.
    pub fn is_window(&self) -> bool {
        self.window
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.above[a].contains(b)
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b)
    }

    pub fn above(&self, a: usize) -> &FixedBitSet {
        &self.above[a]
    }

    /// All strict relations `a < b`.
    pub fn order_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|a| self.above[a].ones().map(move |b| (a, b))).collect()
    }

    /// One representative (the smaller index) of each pair `{a, a*}`.
    pub fn pairs(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| a < self.star[a]).collect()
    }

    /// Some relation holds between `a` or `a*` and `b` or `b*`.
    pub fn nested(&self, a: usize, b: usize) -> bool {
        let (sa, sb) = (self.star[a], self.star[b]);
        self.lt(a, b) || self.lt(a, sb) || self.lt(sa, b) || self.lt(sa, sb)
    }

    /// Distinct pairs with none of the four possible relations.
    pub fn transverse(&self, a: usize, b: usize) -> bool {
        a != b && self.star[a] != b && !self.nested(a, b)
    }

    /// Transverse couples of pair representatives.
    pub fn transverse_pairs(&self) -> Vec<(usize, usize)> {
        let reps = self.pairs();
        let mut out = Vec::new();
        for (i, &a) in reps.iter().enumerate() {
            for &b in &reps[i + 1..] {
                if self.transverse(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Maximum number of pairwise transverse elements. Without transverse
    /// couples the answer is immediate at any size; otherwise the search is
    /// exhaustive and refused above [`WIDTH_LIMIT`] elements.
    pub fn width(&self) -> Result<usize, PocsetError> {
        let reps = self.pairs();
        if reps.is_empty() {
            return Ok(0);
        }
        let crossing = self.transverse_pairs();
        if crossing.is_empty() {
            return Ok(1);
        }
        if self.len() > WIDTH_LIMIT {
            return Err(PocsetError::TooLarge { size: self.len(), limit: WIDTH_LIMIT });
        }
        let index = |a: usize| reps.iter().position(|&r| r == a).expect("representative");
        let mut adj = vec![0u32; reps.len()];
        for (a, b) in crossing {
            let (i, j) = (index(a), index(b));
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        Ok(max_clique(&adj, 0, (1u32 << reps.len()) - 1))
    }
}

/// Size of a largest clique of `adj` (bitmask rows) extending one of `size`
/// vertices by vertices from `candidates`.
pub(crate) fn max_clique(adj: &[u32], size: usize, candidates: u32) -> usize {
    let mut best = size;
    let mut rest = candidates;
    while rest != 0 {
        if size + rest.count_ones() as usize <= best {
            break;
        }
        let v = rest.trailing_zeros() as usize;
        rest &= !(1 << v);
        best = best.max(max_clique(adj, size + 1, rest & adj[v]));
    }
    best
}

/// Pocset of subsets of `points`: element `2i` is `sets[i]`, element `2i+1`
/// its complement, ordered by strict inclusion.
pub(crate) fn from_sets(
    names: Vec<String>,
    sets: &[FixedBitSet],
    points: usize,
    window: bool,
) -> Result<Pocset, PocsetError> {
    let mut all = Vec::with_capacity(2 * sets.len());
    for s in sets {
        let mut c = s.clone();
        c.toggle_range(0..points);
        all.push(s.clone());
        all.push(c);
    }
    let n = all.len();
    let star: Vec<usize> = (0..n).map(|a| a ^ 1).collect();
    let mut less = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && all[a].is_subset(&all[b]) && all[a] != all[b] {
                less.push((a, b));
            }
        }
    }
    Pocset::new(names, star, &less, window)
}
