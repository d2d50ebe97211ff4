//! The faithful affine representation of `BS(1,n)`: `a ↦ (x ↦ x+1)`,
//! `t ↦ (x ↦ x/n)`, with words acting by composition in reading order.

use std::collections::{HashMap, VecDeque};

use hst_groups::{Letter, MarkedGroup};
use num_rational::Ratio;

use crate::error::SplitError;
use crate::spec::{GElem, Splitting, SplittingDecl};

/// `x ↦ scale·x + shift`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub scale: Ratio<i64>,
    pub shift: Ratio<i64>,
}

impl Affine {
    pub fn identity() -> Self {
        Affine { scale: Ratio::from_integer(1), shift: Ratio::from_integer(0) }
    }

    /// `self ∘ other`.
    pub fn then(&self, other: &Affine) -> Affine {
        Affine {
            scale: self.scale * other.scale,
            shift: self.scale * other.shift + self.shift,
        }
    }

    pub fn inverse(&self) -> Affine {
        let scale = self.scale.recip();
        Affine { scale, shift: -self.shift * scale }
    }
}

/// Images of `a` and `t`.
pub fn bs_generators(n: i64) -> [Affine; 2] {
    [
        Affine { scale: Ratio::from_integer(1), shift: Ratio::from_integer(1) },
        Affine { scale: Ratio::new(1, n), shift: Ratio::from_integer(0) },
    ]
}

/// `BS(1,n)` as an HNN extension of `ℤ⟨a⟩` with `t⁻¹·a·t = aⁿ`.
pub fn bs_splitting(n: i64) -> Result<Splitting, SplitError> {
    let base = MarkedGroup::free_abelian(&["a"]);
    let edge = MarkedGroup::free_abelian(&["s"]);
    let decl = SplittingDecl::Hnn {
        domain_images: vec![base.parse("a")?],
        image_images: vec![base.pow(&base.parse("a")?, n)],
        base,
        edge,
        stable: "t".into(),
    };
    Splitting::new(&format!("bs1{n}"), decl)
}

/// Evaluates a word over `a, t` (letters 0 and 1).
pub fn evaluate_word(n: i64, word: &[Letter]) -> Affine {
    let gens = bs_generators(n);
    word.iter().fold(Affine::identity(), |acc, l| {
        let g = gens[l.gen()];
        acc.then(&if l.is_inverse() { g.inverse() } else { g })
    })
}

pub fn evaluate(split: &Splitting, n: i64, g: &GElem) -> Affine {
    evaluate_word(n, &split.letters(g))
}

/// Ball of radius `radius` in the Cayley graph of the affine group on the
/// images of `a` and `t`, with word lengths.
pub fn affine_ball(n: i64, radius: u32) -> HashMap<Affine, u32> {
    let gens = bs_generators(n);
    let steps: Vec<Affine> = gens.iter().flat_map(|g| [*g, g.inverse()]).collect();
    let mut dist = HashMap::from([(Affine::identity(), 0)]);
    let mut queue = VecDeque::from([Affine::identity()]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        if d == radius {
            continue;
        }
        for s in &steps {
            let y = x.then(s);
            if let std::collections::hash_map::Entry::Vacant(slot) = dist.entry(y) {
                slot.insert(d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}
