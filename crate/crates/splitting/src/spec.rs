use std::collections::HashSet;

use hst_groups::{parse_word, Elem, GroupError, Inclusion, Letter, MarkedGroup, SubgroupEngine};
use serde::{Deserialize, Serialize};

use crate::error::SplitError;

/// The two vertex groups of an amalgam. For HNN extensions only `Left`
/// (the base group) occurs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// A splitting as declared: groups plus generator images, with no subgroup
/// engines attached yet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplittingDecl {
    /// `left ∗_edge right`.
    Amalgam {
        left: MarkedGroup,
        right: MarkedGroup,
        edge: MarkedGroup,
        left_images: Vec<Elem>,
        right_images: Vec<Elem>,
    },
    /// `base ∗_edge` with `stable⁻¹ · domain(c) · stable = image(c)`.
    Hnn {
        base: MarkedGroup,
        edge: MarkedGroup,
        domain_images: Vec<Elem>,
        image_images: Vec<Elem>,
        stable: String,
    },
}

impl SplittingDecl {
    pub fn edge(&self) -> &MarkedGroup {
        match self {
            SplittingDecl::Amalgam { edge, .. } | SplittingDecl::Hnn { edge, .. } => edge,
        }
    }

    pub fn is_hnn(&self) -> bool {
        matches!(self, SplittingDecl::Hnn { .. })
    }

    /// Names of the letters of G: vertex-group generators, then the stable
    /// letter.
    pub fn letter_names(&self) -> Vec<String> {
        match self {
            SplittingDecl::Amalgam { left, right, .. } => {
                let mut n = left.names();
                n.extend(right.names());
                n
            }
            SplittingDecl::Hnn { base, stable, .. } => {
                let mut n = base.names();
                n.push(stable.clone());
                n
            }
        }
    }

    pub fn validate(&self) -> Result<(), SplitError> {
        let (groups, maps): (Vec<&MarkedGroup>, Vec<(&MarkedGroup, &Vec<Elem>)>) = match self {
            SplittingDecl::Amalgam { left, right, edge, left_images, right_images } => {
                (vec![left, right, edge], vec![(left, left_images), (right, right_images)])
            }
            SplittingDecl::Hnn { base, edge, domain_images, image_images, .. } => {
                (vec![base, edge], vec![(base, domain_images), (base, image_images)])
            }
        };
        for g in &groups {
            g.validate()?;
        }
        let mut seen = HashSet::new();
        let mut names: Vec<String> = groups.iter().flat_map(|g| g.names()).collect();
        if let SplittingDecl::Hnn { stable, .. } = self {
            names.push(stable.clone());
        }
        for n in names {
            if !seen.insert(n.clone()) {
                return Err(GroupError::NameCollision(n).into());
            }
        }
        let edge = self.edge();
        for (target, images) in maps {
            if images.len() != edge.rank() {
                return Err(SplitError::Invalid(format!(
                    "{} images given for {} edge generators",
                    images.len(),
                    edge.rank()
                )));
            }
            for x in images {
                target.check(x)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
enum Maps {
    Amalgam { left: Inclusion, right: Inclusion },
    Hnn { domain: Inclusion, image: Inclusion },
}

/// One syllable of a normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    /// Nontrivial left-coset representative of the edge group in the left
    /// vertex group.
    Left(Elem),
    /// Same, in the right vertex group.
    Right(Elem),
    /// `rep · t`, rep a left-coset representative of the domain subgroup.
    Up(Elem),
    /// `rep · t⁻¹`, rep a left-coset representative of the image subgroup.
    Down(Elem),
}

impl Step {
    pub fn rep(&self) -> &Elem {
        match self {
            Step::Left(r) | Step::Right(r) | Step::Up(r) | Step::Down(r) => r,
        }
    }
}

/// Canonical normal form of an element of the split group.
///
/// Amalgam: alternating `Left`/`Right` syllables, then a tail in the abstract
/// edge group. HNN: Britton form with `Up`/`Down` syllables and a tail in the
/// base group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GElem {
    pub steps: Vec<Step>,
    pub tail: Elem,
}

/// Something that can be multiplied onto a normal form on the right.
#[derive(Clone, Debug)]
pub enum Piece {
    Vertex(Side, Elem),
    Stable { inverse: bool },
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub elem: GElem,
    pub inverse: GElem,
}

/// A splitting with engines attached: normal forms and multiplication.
#[derive(Clone, Debug)]
pub struct Splitting {
    name: String,
    decl: SplittingDecl,
    maps: Maps,
    generators: Vec<Generator>,
    /// For each letter of G, its position in `generators` and whether it is
    /// that generator's inverse.
    letter_map: Vec<(usize, bool)>,
}

impl Splitting {
    pub fn new(name: &str, decl: SplittingDecl) -> Result<Self, SplitError> {
        decl.validate()?;
        let maps = match &decl {
            SplittingDecl::Amalgam { left, right, edge, left_images, right_images } => Maps::Amalgam {
                left: Inclusion::new(edge, left, left_images.clone())?,
                right: Inclusion::new(edge, right, right_images.clone())?,
            },
            SplittingDecl::Hnn { base, edge, domain_images, image_images, .. } => Maps::Hnn {
                domain: Inclusion::new(edge, base, domain_images.clone())?,
                image: Inclusion::new(edge, base, image_images.clone())?,
            },
        };
        let mut s = Splitting {
            name: name.to_string(),
            decl,
            maps,
            generators: Vec::new(),
            letter_map: Vec::new(),
        };
        s.build_generators()?;
        Ok(s)
    }

    /// Generating set: vertex-group generators, the stable letter, and the
    /// edge-group generators (so walls are Cayley graphs of the edge group),
    /// deduplicated up to inversion by group element, first name kept.
    fn build_generators(&mut self) -> Result<(), SplitError> {
        let mut named: Vec<(String, GElem)> = Vec::new();
        let names = self.decl.letter_names();
        for (i, n) in names.iter().enumerate() {
            let piece = self.letter_piece(Letter::new(i, false));
            let mut g = self.identity();
            self.push(&mut g, &piece)?;
            named.push((n.clone(), g));
        }
        let edge = self.decl.edge().clone();
        for (j, n) in edge.names().iter().enumerate() {
            let c = edge.generator(j);
            let x = self.edge_elem(&c);
            named.push((n.clone(), x));
        }
        let mut gens: Vec<Generator> = Vec::new();
        let mut letter_map = Vec::new();
        for (i, (name, elem)) in named.into_iter().enumerate() {
            let inverse = self.inv(&elem)?;
            let hit = gens.iter().position(|g| g.elem == elem).map(|p| (p, false)).or_else(|| {
                gens.iter().position(|g| g.elem == inverse).map(|p| (p, true))
            });
            let is_identity = elem == self.identity();
            match hit {
                Some(h) => {
                    if i < names.len() {
                        letter_map.push(h);
                    }
                }
                None if is_identity => {
                    return Err(SplitError::Invalid(format!("generator {name} is trivial in the split group")));
                }
                None => {
                    if i < names.len() {
                        letter_map.push((gens.len(), false));
                    }
                    gens.push(Generator { name, elem, inverse });
                }
            }
        }
        self.generators = gens;
        self.letter_map = letter_map;
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn decl(&self) -> &SplittingDecl {
        &self.decl
    }

    pub fn is_hnn(&self) -> bool {
        self.decl.is_hnn()
    }

    pub fn edge_group(&self) -> &MarkedGroup {
        self.decl.edge()
    }

    pub fn vertex_group(&self, side: Side) -> &MarkedGroup {
        match (&self.decl, side) {
            (SplittingDecl::Amalgam { left, .. }, Side::Left) => left,
            (SplittingDecl::Amalgam { right, .. }, Side::Right) => right,
            (SplittingDecl::Hnn { base, .. }, _) => base,
        }
    }

    /// Inclusion of the edge group into a vertex group. For HNN extensions
    /// `Left` is the domain map and `Right` the image map (both into the base).
    pub fn inclusion(&self, side: Side) -> &Inclusion {
        match (&self.maps, side) {
            (Maps::Amalgam { left, .. }, Side::Left) => left,
            (Maps::Amalgam { right, .. }, Side::Right) => right,
            (Maps::Hnn { domain, .. }, Side::Left) => domain,
            (Maps::Hnn { image, .. }, Side::Right) => image,
        }
    }

    pub fn engine(&self, side: Side) -> &SubgroupEngine {
        self.inclusion(side).engine()
    }

    pub fn stable_name(&self) -> Option<&str> {
        match &self.decl {
            SplittingDecl::Hnn { stable, .. } => Some(stable),
            _ => None,
        }
    }

    /// Edge group equal to a vertex group on the relevant side(s).
    pub fn is_trivial(&self) -> bool {
        match &self.maps {
            Maps::Amalgam { left, right } => left.is_onto() || right.is_onto(),
            Maps::Hnn { domain, image } => domain.is_onto() && image.is_onto(),
        }
    }

    pub fn require_nontrivial(&self) -> Result<(), SplitError> {
        if self.is_trivial() {
            Err(SplitError::Trivial(format!(
                "{}: the edge group equals a vertex group",
                self.name
            )))
        } else {
            Ok(())
        }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn identity(&self) -> GElem {
        let tail = match &self.decl {
            SplittingDecl::Amalgam { edge, .. } => edge.identity(),
            SplittingDecl::Hnn { base, .. } => base.identity(),
        };
        GElem { steps: Vec::new(), tail }
    }

    pub fn is_identity(&self, g: &GElem) -> bool {
        g.steps.is_empty()
            && match &self.decl {
                SplittingDecl::Amalgam { edge, .. } => edge.is_identity(&g.tail),
                SplittingDecl::Hnn { base, .. } => base.is_identity(&g.tail),
            }
    }

    /// The piece for a letter of G (see [`SplittingDecl::letter_names`]).
    pub fn letter_piece(&self, l: Letter) -> Piece {
        match &self.decl {
            SplittingDecl::Amalgam { left, right, .. } => {
                let (side, grp, local) = if l.gen() < left.rank() {
                    (Side::Left, left, l.gen())
                } else {
                    (Side::Right, right, l.gen() - left.rank())
                };
                Piece::Vertex(side, grp.letter(Letter::new(local, l.is_inverse())))
            }
            SplittingDecl::Hnn { base, .. } => {
                if l.gen() < base.rank() {
                    Piece::Vertex(Side::Left, base.letter(l))
                } else {
                    Piece::Stable { inverse: l.is_inverse() }
                }
            }
        }
    }

    /// Element of G given by an edge-group element (through the left map).
    pub fn edge_elem(&self, c: &Elem) -> GElem {
        match &self.maps {
            Maps::Amalgam { .. } => GElem { steps: Vec::new(), tail: c.clone() },
            Maps::Hnn { domain, .. } => GElem { steps: Vec::new(), tail: domain.apply(c) },
        }
    }

    /// Element of G given by a vertex-group element.
    pub fn vertex_elem(&self, side: Side, x: &Elem) -> Result<GElem, SplitError> {
        let mut g = self.identity();
        self.push(&mut g, &Piece::Vertex(side, x.clone()))?;
        Ok(g)
    }

    /// Splits `z` in a vertex group as `rep · incl(c)` with `rep` the
    /// canonical left-coset representative.
    fn decompose(&self, side: Side, z: &Elem) -> Result<(Elem, Elem), SplitError> {
        let inc = self.inclusion(side);
        let grp = inc.target();
        let rep = inc.engine().left_rep(z)?;
        let k = grp.mul(&grp.inv(&rep), z);
        let c = inc
            .pull(&k)
            .ok_or_else(|| SplitError::Invalid("coset representative left the coset".into()))?;
        Ok((rep, c))
    }

    /// Right-multiplies a normal form by one piece.
    pub fn push(&self, g: &mut GElem, piece: &Piece) -> Result<(), SplitError> {
        match (&self.maps, piece) {
            (Maps::Amalgam { .. }, Piece::Vertex(side, x)) => {
                let inc = self.inclusion(*side);
                let grp = inc.target();
                grp.check(x)?;
                let mut y = grp.mul(&inc.apply(&g.tail), x);
                let same = matches!(
                    (g.steps.last(), side),
                    (Some(Step::Left(_)), Side::Left) | (Some(Step::Right(_)), Side::Right)
                );
                if same {
                    let last = g.steps.pop().expect("checked");
                    y = grp.mul(last.rep(), &y);
                }
                let (rep, c) = self.decompose(*side, &y)?;
                if !grp.is_identity(&rep) {
                    g.steps.push(match side {
                        Side::Left => Step::Left(rep),
                        Side::Right => Step::Right(rep),
                    });
                }
                g.tail = c;
                Ok(())
            }
            (Maps::Amalgam { .. }, Piece::Stable { .. }) => {
                Err(SplitError::Invalid("amalgams have no stable letter".into()))
            }
            (Maps::Hnn { .. }, Piece::Vertex(_, x)) => {
                let base = self.vertex_group(Side::Left);
                base.check(x)?;
                g.tail = base.mul(&g.tail, x);
                Ok(())
            }
            (Maps::Hnn { domain, image }, Piece::Stable { inverse }) => {
                let base = self.vertex_group(Side::Left);
                let (through, other, pinch_side) = if *inverse {
                    (Side::Right, domain, Side::Left)
                } else {
                    (Side::Left, image, Side::Right)
                };
                let (rep, c) = self.decompose(through, &g.tail)?;
                let moved = other.apply(&c);
                let pinch = base.is_identity(&rep)
                    && matches!(
                        (g.steps.last(), pinch_side),
                        (Some(Step::Down(_)), Side::Right) | (Some(Step::Up(_)), Side::Left)
                    );
                if pinch {
                    let last = g.steps.pop().expect("checked");
                    g.tail = base.mul(last.rep(), &moved);
                } else {
                    g.steps.push(if *inverse { Step::Down(rep) } else { Step::Up(rep) });
                    g.tail = moved;
                }
                Ok(())
            }
        }
    }

    /// The pieces whose product is `g`.
    pub fn pieces(&self, g: &GElem) -> Vec<Piece> {
        let mut out = Vec::new();
        for s in &g.steps {
            match s {
                Step::Left(r) => out.push(Piece::Vertex(Side::Left, r.clone())),
                Step::Right(r) => out.push(Piece::Vertex(Side::Right, r.clone())),
                Step::Up(r) => {
                    out.push(Piece::Vertex(Side::Left, r.clone()));
                    out.push(Piece::Stable { inverse: false });
                }
                Step::Down(r) => {
                    out.push(Piece::Vertex(Side::Left, r.clone()));
                    out.push(Piece::Stable { inverse: true });
                }
            }
        }
        match &self.maps {
            Maps::Amalgam { left, .. } => out.push(Piece::Vertex(Side::Left, left.apply(&g.tail))),
            Maps::Hnn { .. } => out.push(Piece::Vertex(Side::Left, g.tail.clone())),
        }
        out
    }

    fn inv_piece(&self, p: &Piece) -> Piece {
        match p {
            Piece::Vertex(side, x) => Piece::Vertex(*side, self.vertex_group(*side).inv(x)),
            Piece::Stable { inverse } => Piece::Stable { inverse: !inverse },
        }
    }

    pub fn mul(&self, g: &GElem, h: &GElem) -> Result<GElem, SplitError> {
        let mut out = g.clone();
        for p in self.pieces(h) {
            self.push(&mut out, &p)?;
        }
        Ok(out)
    }

    pub fn inv(&self, g: &GElem) -> Result<GElem, SplitError> {
        let mut out = self.identity();
        for p in self.pieces(g).iter().rev() {
            self.push(&mut out, &self.inv_piece(p))?;
        }
        Ok(out)
    }

    /// Normal form of a word over the letters of G.
    pub fn normalize(&self, word: &[Letter]) -> Result<GElem, SplitError> {
        let mut g = self.identity();
        for &l in word {
            if l.gen() >= self.letter_map.len() {
                return Err(SplitError::Invalid(format!("letter {} out of range", l.gen())));
            }
            self.push(&mut g, &self.letter_piece(l))?;
        }
        Ok(g)
    }

    /// Parses a product of letters of G, e.g. `t*a^2*t^-1`. Edge-group
    /// generator names are accepted too, standing for their left images.
    pub fn parse(&self, s: &str) -> Result<GElem, SplitError> {
        let mut names = self.decl.letter_names();
        let letters = names.len();
        names.extend(self.edge_group().names());
        let mut g = self.identity();
        for l in parse_word(&names, s)? {
            if l.gen() < letters {
                self.push(&mut g, &self.letter_piece(l))?;
            } else {
                let edge = self.edge_group();
                let c = edge.letter(Letter::new(l.gen() - letters, l.is_inverse()));
                g = self.mul(&g, &self.edge_elem(&c))?;
            }
        }
        Ok(g)
    }

    /// A word over the letters of G spelling `g`.
    pub fn letters(&self, g: &GElem) -> Vec<Letter> {
        let mut out = Vec::new();
        let left_rank = self.vertex_group(Side::Left).rank();
        for p in self.pieces(g) {
            match p {
                Piece::Vertex(side, x) => {
                    let grp = self.vertex_group(side);
                    let offset = if side == Side::Right { left_rank } else { 0 };
                    out.extend(grp.word(&x).into_iter().map(|l| l.shift(offset)));
                }
                Piece::Stable { inverse } => out.push(Letter::new(left_rank, inverse)),
            }
        }
        out
    }

    /// A word over the Cayley generators (indices into [`Self::generators`]).
    pub fn spell(&self, g: &GElem) -> Vec<Letter> {
        self.letters(g)
            .into_iter()
            .map(|l| {
                let (i, flip) = self.letter_map[l.gen()];
                Letter::new(i, l.is_inverse() ^ flip)
            })
            .collect()
    }

    /// Printed normal form: syllables in their vertex groups' generator
    /// names joined by `*`, then the tail (edge-group names for amalgams).
    pub fn label(&self, g: &GElem) -> String {
        let mut parts = Vec::new();
        let stable = self.stable_name().unwrap_or("t");
        for s in &g.steps {
            match s {
                Step::Left(r) => parts.push(self.vertex_group(Side::Left).format(r)),
                Step::Right(r) => parts.push(self.vertex_group(Side::Right).format(r)),
                Step::Up(r) | Step::Down(r) => {
                    let base = self.vertex_group(Side::Left);
                    if !base.is_identity(r) {
                        parts.push(base.format(r));
                    }
                    parts.push(if matches!(s, Step::Up(_)) {
                        stable.to_string()
                    } else {
                        format!("{stable}^-1")
                    });
                }
            }
        }
        let tail_group = match &self.decl {
            SplittingDecl::Amalgam { edge, .. } => edge,
            SplittingDecl::Hnn { base, .. } => base,
        };
        if !tail_group.is_identity(&g.tail) {
            parts.push(tail_group.format(&g.tail));
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Whether `g` lies in the edge group (the wall through the identity).
    pub fn in_edge_group(&self, g: &GElem) -> bool {
        g.steps.is_empty()
            && match &self.maps {
                Maps::Amalgam { .. } => true,
                Maps::Hnn { domain, .. } => domain.engine().contains(&g.tail),
            }
    }

    /// Number of syllables (stable letters for HNN) in the normal form.
    pub fn syllable_length(&self, g: &GElem) -> usize {
        g.steps.len()
    }
}
