use crate::error::GroupError;
use crate::group::{Elem, Letter, MarkedGroup, Word};
use crate::lattice::LatticeEngine;
use crate::stallings::StallingsCore;

/// Sub-engine on one factor of a product, with the positions of the parent
/// generators it was built from.
#[derive(Clone, Debug)]
pub struct Part {
    pub engine: SubgroupEngine,
    pub gen_ids: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum EngineKind {
    Trivial,
    Stallings(StallingsCore),
    Lattice(LatticeEngine),
    /// Componentwise product of subgroups of the direct factors.
    Direct(Vec<Part>),
    /// Free product of subgroups of the free factors.
    FreeFactors(Vec<Part>),
}

/// A finitely generated subgroup with membership, canonical right-coset
/// representatives, and expression of members as words in the given
/// generators.
#[derive(Clone, Debug)]
pub struct SubgroupEngine {
    ambient: MarkedGroup,
    generators: Vec<Elem>,
    kind: EngineKind,
}

impl SubgroupEngine {
    /// Recognizes `⟨gens⟩` in one of the supported shapes, or reports which
    /// engine would be needed.
    pub fn generated_by(ambient: &MarkedGroup, gens: &[Elem]) -> Result<Self, GroupError> {
        for g in gens {
            ambient.check(g)?;
        }
        let nontrivial: Vec<usize> = (0..gens.len()).filter(|&j| !ambient.is_identity(&gens[j])).collect();
        let kind = if nontrivial.is_empty() {
            EngineKind::Trivial
        } else {
            match ambient {
                MarkedGroup::Free(names) => {
                    let words: Vec<Word> = gens.iter().map(|g| ambient.word(g)).collect();
                    EngineKind::Stallings(StallingsCore::new(names.len(), &words))
                }
                MarkedGroup::FreeAbelian(names) => {
                    let vecs: Vec<Vec<i64>> = gens
                        .iter()
                        .map(|g| match g {
                            Elem::Vector(v) => v.clone(),
                            _ => unreachable!("checked above"),
                        })
                        .collect();
                    EngineKind::Lattice(LatticeEngine::new(names.len(), &vecs)?)
                }
                MarkedGroup::Direct(fs) => {
                    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); fs.len()];
                    for &j in &nontrivial {
                        let Elem::Tuple(cs) = &gens[j] else { unreachable!() };
                        let support: Vec<usize> =
                            (0..fs.len()).filter(|&i| !fs[i].is_identity(&cs[i])).collect();
                        if support.len() > 1 {
                            return Err(GroupError::Capability(format!(
                                "generator {} spans several direct factors; only direct-factor selections are supported",
                                ambient.format(&gens[j])
                            )));
                        }
                        buckets[support[0]].push(j);
                    }
                    let parts = Self::parts(fs, gens, buckets, |g, i| match g {
                        Elem::Tuple(cs) => cs[i].clone(),
                        _ => unreachable!(),
                    })?;
                    EngineKind::Direct(parts)
                }
                MarkedGroup::FreeProduct(fs) => {
                    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); fs.len()];
                    for &j in &nontrivial {
                        let Elem::Syllables(s) = &gens[j] else { unreachable!() };
                        if s.len() > 1 {
                            return Err(GroupError::Capability(format!(
                                "generator {} mixes free factors; subgroups of free products are supported only as free products of factor subgroups (needs generalized foldings)",
                                ambient.format(&gens[j])
                            )));
                        }
                        buckets[s[0].0].push(j);
                    }
                    let parts = Self::parts(fs, gens, buckets, |g, i| match g {
                        Elem::Syllables(s) if s.len() == 1 && s[0].0 == i => s[0].1.clone(),
                        _ => unreachable!(),
                    })?;
                    EngineKind::FreeFactors(parts)
                }
            }
        };
        Ok(SubgroupEngine {
            ambient: ambient.clone(),
            generators: gens.to_vec(),
            kind,
        })
    }

    fn parts(
        fs: &[MarkedGroup],
        gens: &[Elem],
        buckets: Vec<Vec<usize>>,
        project: impl Fn(&Elem, usize) -> Elem,
    ) -> Result<Vec<Part>, GroupError> {
        buckets
            .into_iter()
            .enumerate()
            .map(|(i, ids)| {
                let local: Vec<Elem> = ids.iter().map(|&j| project(&gens[j], i)).collect();
                Ok(Part {
                    engine: SubgroupEngine::generated_by(&fs[i], &local)?,
                    gen_ids: ids,
                })
            })
            .collect()
    }

    /// The whole group, generated by its own generators.
    pub fn whole(ambient: &MarkedGroup) -> Result<Self, GroupError> {
        Self::generated_by(ambient, &ambient.generators())
    }

    pub fn trivial(ambient: &MarkedGroup) -> Self {
        SubgroupEngine {
            ambient: ambient.clone(),
            generators: Vec::new(),
            kind: EngineKind::Trivial,
        }
    }

    pub fn ambient(&self) -> &MarkedGroup {
        &self.ambient
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn kind(&self) -> &EngineKind {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            EngineKind::Trivial => "trivial",
            EngineKind::Stallings(_) => "stallings-core",
            EngineKind::Lattice(_) => "lattice",
            EngineKind::Direct(_) => "direct-factors",
            EngineKind::FreeFactors(_) => "free-factors",
        }
    }

    pub fn contains(&self, g: &Elem) -> bool {
        match (&self.kind, g) {
            (EngineKind::Trivial, _) => self.ambient.is_identity(g),
            (EngineKind::Stallings(core), _) => core.contains(&self.ambient.word(g)),
            (EngineKind::Lattice(l), Elem::Vector(v)) => l.contains(v),
            (EngineKind::Direct(parts), Elem::Tuple(cs)) => {
                parts.iter().zip(cs).all(|(p, c)| p.engine.contains(c))
            }
            (EngineKind::FreeFactors(parts), Elem::Syllables(s)) => {
                s.iter().all(|(i, x)| parts[*i].engine.contains(x))
            }
            _ => false,
        }
    }

    /// A word in the given generators (letter `j` = generator `j`) that
    /// evaluates to `h`, or `None` if `h` is not a member.
    pub fn express(&self, h: &Elem) -> Option<Word> {
        match (&self.kind, h) {
            (EngineKind::Trivial, _) => self.ambient.is_identity(h).then(Vec::new),
            (EngineKind::Stallings(core), _) => core.express(&self.ambient.word(h)),
            (EngineKind::Lattice(l), Elem::Vector(v)) => {
                let coeff = l.express(v)?;
                let mut out = Vec::new();
                for (j, &c) in coeff.iter().enumerate() {
                    out.extend(std::iter::repeat_n(Letter::new(j, c < 0), c.unsigned_abs() as usize));
                }
                Some(out)
            }
            (EngineKind::Direct(parts), Elem::Tuple(cs)) => {
                let mut out = Vec::new();
                for (p, c) in parts.iter().zip(cs) {
                    out.extend(relabel(&p.engine.express(c)?, &p.gen_ids));
                }
                Some(out)
            }
            (EngineKind::FreeFactors(parts), Elem::Syllables(s)) => {
                let mut out = Vec::new();
                for (i, x) in s {
                    out.extend(relabel(&parts[*i].engine.express(x)?, &parts[*i].gen_ids));
                }
                Some(out)
            }
            _ => None,
        }
    }

    /// Canonical representative of the right coset `H·g`: its shortlex-least
    /// element.
    pub fn right_rep(&self, g: &Elem) -> Result<Elem, GroupError> {
        match (&self.kind, g) {
            (EngineKind::Trivial, _) => Ok(g.clone()),
            (EngineKind::Stallings(core), Elem::Word(w)) => Ok(Elem::Word(core.right_rep(w))),
            (EngineKind::Lattice(l), Elem::Vector(v)) => Ok(Elem::Vector(l.coset_rep(v)?)),
            (EngineKind::Direct(parts), Elem::Tuple(cs)) => Ok(Elem::Tuple(
                parts
                    .iter()
                    .zip(cs)
                    .map(|(p, c)| p.engine.right_rep(c))
                    .collect::<Result<_, _>>()?,
            )),
            (EngineKind::FreeFactors(parts), Elem::Syllables(s)) => {
                let MarkedGroup::FreeProduct(fs) = &self.ambient else { unreachable!() };
                for (k, (i, x)) in s.iter().enumerate() {
                    if parts[*i].engine.contains(x) {
                        continue;
                    }
                    let rep = parts[*i].engine.right_rep(x)?;
                    debug_assert!(!fs[*i].is_identity(&rep));
                    let mut out = vec![(*i, rep)];
                    out.extend(s[k + 1..].iter().cloned());
                    return Ok(Elem::Syllables(out));
                }
                Ok(Elem::Syllables(Vec::new()))
            }
            _ => Err(GroupError::Mismatch(self.ambient.describe())),
        }
    }

    /// Representative of the left coset `g·H`, defined as the inverse of the
    /// canonical representative of `H·g⁻¹`.
    pub fn left_rep(&self, g: &Elem) -> Result<Elem, GroupError> {
        let r = self.right_rep(&self.ambient.inv(g))?;
        Ok(self.ambient.inv(&r))
    }

    /// Whether the given generators are known to satisfy no relation beyond
    /// those forced by the engine shape (free basis / lattice basis).
    pub fn basis_relations(&self) -> usize {
        match &self.kind {
            EngineKind::Trivial => 0,
            EngineKind::Stallings(c) => c.relations().len(),
            EngineKind::Lattice(l) => l.kernel().len(),
            EngineKind::Direct(ps) | EngineKind::FreeFactors(ps) => {
                ps.iter().map(|p| p.engine.basis_relations()).sum()
            }
        }
    }

    /// Index in the ambient group, `None` when infinite.
    pub fn index(&self) -> Option<u64> {
        match &self.kind {
            EngineKind::Trivial => None,
            EngineKind::Stallings(c) => c.index(),
            EngineKind::Lattice(l) => l.index(),
            EngineKind::Direct(ps) => ps.iter().try_fold(1u64, |acc, p| Some(acc * p.engine.index()?)),
            EngineKind::FreeFactors(ps) => ps.iter().all(|p| p.engine.is_whole()).then_some(1),
        }
    }

    /// Whether the subgroup is the whole ambient group.
    pub fn is_whole(&self) -> bool {
        match &self.kind {
            EngineKind::Trivial => false,
            EngineKind::Stallings(c) => c.is_whole(),
            EngineKind::Lattice(l) => l.is_whole(),
            EngineKind::Direct(ps) | EngineKind::FreeFactors(ps) => ps.iter().all(|p| p.engine.is_whole()),
        }
    }
}

fn relabel(w: &[Letter], ids: &[usize]) -> Word {
    w.iter().map(|l| Letter::new(ids[l.gen()], l.is_inverse())).collect()
}

/// Relator words of the standard presentation of a marked group, over its
/// global generators.
pub fn relators(g: &MarkedGroup) -> Vec<Word> {
    fn comm(x: usize, y: usize) -> Word {
        vec![
            Letter::new(x, false),
            Letter::new(y, false),
            Letter::new(x, true),
            Letter::new(y, true),
        ]
    }
    match g {
        MarkedGroup::Free(_) => Vec::new(),
        MarkedGroup::FreeAbelian(n) => {
            let mut out = Vec::new();
            for i in 0..n.len() {
                for j in i + 1..n.len() {
                    out.push(comm(i, j));
                }
            }
            out
        }
        MarkedGroup::Direct(fs) | MarkedGroup::FreeProduct(fs) => {
            let offs = g.offsets();
            let mut out: Vec<Word> = fs
                .iter()
                .zip(&offs)
                .flat_map(|(f, &o)| relators(f).into_iter().map(move |w| w.iter().map(|l| l.shift(o)).collect()))
                .collect();
            if matches!(g, MarkedGroup::Direct(_)) {
                for (a, fa) in fs.iter().enumerate() {
                    for (b, fb) in fs.iter().enumerate().skip(a + 1) {
                        for x in 0..fa.rank() {
                            for y in 0..fb.rank() {
                                out.push(comm(offs[a] + x, offs[b] + y));
                            }
                        }
                    }
                }
            }
            out
        }
    }
}

/// An injective homomorphism from an abstract marked group onto a recognized
/// subgroup of a target group, given by generator images.
#[derive(Clone, Debug)]
pub struct Inclusion {
    source: MarkedGroup,
    target: MarkedGroup,
    images: Vec<Elem>,
    inverse_images: Vec<Elem>,
    engine: SubgroupEngine,
}

/// Number of random source elements pushed through `pull ∘ apply`.
const INJECTIVITY_SAMPLES: usize = 200;

impl Inclusion {
    pub fn new(source: &MarkedGroup, target: &MarkedGroup, images: Vec<Elem>) -> Result<Self, GroupError> {
        if images.len() != source.rank() {
            return Err(GroupError::Invalid(format!(
                "{} images for {} generators",
                images.len(),
                source.rank()
            )));
        }
        let engine = SubgroupEngine::generated_by(target, &images)?;
        let inverse_images = images.iter().map(|g| target.inv(g)).collect();
        let inc = Inclusion {
            source: source.clone(),
            target: target.clone(),
            images,
            inverse_images,
            engine,
        };
        inc.validate()?;
        Ok(inc)
    }

    fn validate(&self) -> Result<(), GroupError> {
        for r in relators(&self.source) {
            let img = self.apply_word(&r);
            if !self.target.is_identity(&img) {
                return Err(GroupError::Invalid(format!(
                    "relator {} does not hold for the images",
                    crate::group::format_word(&self.source.names(), &r)
                )));
            }
        }
        let exact_basis = matches!(
            (&self.source, &self.engine.kind),
            (MarkedGroup::Free(_), EngineKind::Stallings(_)) | (MarkedGroup::FreeAbelian(_), EngineKind::Lattice(_))
        );
        if exact_basis && self.engine.basis_relations() > 0 {
            return Err(GroupError::Invalid("inclusion is not injective".into()));
        }
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
        for i in 0..INJECTIVITY_SAMPLES {
            let c = self.source.random_elem(&mut rng, 1 + i % 8);
            let back = self.pull(&self.apply(&c));
            if back.as_ref() != Some(&c) {
                return Err(GroupError::Invalid(format!(
                    "inclusion is not injective: {} does not round-trip",
                    self.source.format(&c)
                )));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &MarkedGroup {
        &self.source
    }

    pub fn target(&self) -> &MarkedGroup {
        &self.target
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn engine(&self) -> &SubgroupEngine {
        &self.engine
    }

    pub fn apply_word(&self, w: &[Letter]) -> Elem {
        w.iter().fold(self.target.identity(), |acc, l| {
            let x = if l.is_inverse() {
                &self.inverse_images[l.gen()]
            } else {
                &self.images[l.gen()]
            };
            self.target.mul(&acc, x)
        })
    }

    pub fn apply(&self, c: &Elem) -> Elem {
        self.apply_word(&self.source.word(c))
    }

    /// The source element mapping to `y`, if `y` is in the image.
    pub fn pull(&self, y: &Elem) -> Option<Elem> {
        self.engine.express(y).map(|w| self.source.eval(&w))
    }

    /// Whether the images are exactly the target's generators (up to order),
    /// so the image is everything.
    pub fn is_onto(&self) -> bool {
        self.engine.is_whole()
    }
}
