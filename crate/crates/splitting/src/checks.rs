use hst_graph::{end_report, grow_ball, BallGraph, EndReport};
use hst_groups::{CayleyGraph, Elem, MarkedGroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::SplitError;
use crate::spec::SplittingDecl;

/// Outcome of matching a declaration against one structural pattern.
#[derive(Clone, Debug, Serialize)]
pub struct PatternMatch {
    pub pattern: &'static str,
    pub matched: bool,
    pub reason: String,
}

/// Result of checks that only look at a declaration, never at normal forms
/// of the whole group.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub central_stable: PatternMatch,
    pub double: PatternMatch,
    /// End probe of the edge group's Cayley graph, built inside its ambient
    /// vertex group.
    pub edge_ends: Option<EndReport>,
    /// End probe of `ray × Cay(C)`, present when the stable letter is central
    /// on the edge group.
    pub product_ends: Option<EndReport>,
    /// Number of sampled edge elements on which the swap of a double agreed.
    pub swap_samples: Option<usize>,
    /// Conclusions that follow from known results, each tagged `[cited: ...]`.
    pub conclusions: Vec<String>,
}

impl CheckReport {
    pub fn edge_multi_ended(&self) -> Option<bool> {
        self.edge_ends.as_ref().map(|e| e.unbounded_count >= 2)
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for p in [&self.central_stable, &self.double] {
            let verdict = if p.matched { "matched" } else { "not matched" };
            out.push(format!("{} pattern: {verdict} ({})", p.pattern, p.reason));
        }
        if let Some(e) = &self.edge_ends {
            out.push(format!("edge group ends: {}", e.summary()));
        }
        if let Some(e) = &self.product_ends {
            out.push(format!("ray x edge group ends: {}", e.summary()));
        }
        if let Some(n) = self.swap_samples {
            out.push(format!("swap involution agreed on {n} sampled edge elements"));
        }
        out.extend(self.conclusions.iter().cloned());
        out
    }
}

const SWAP_SAMPLES: usize = 200;
const CITE_PRODUCT: &str = "[cited: stable letter commuting with a multi-ended edge group]";
const CITE_DOUBLE: &str = "[cited: doubles along multi-ended subgroups]";

/// `inner`/`probe` are the radii of the end probes; `probe` is also the
/// window radius.
pub fn syntactic_checks(decl: &SplittingDecl, inner: u32, probe: u32, budget: Option<usize>) -> Result<CheckReport, SplitError> {
    decl.validate()?;
    let central_stable = match decl {
        SplittingDecl::Hnn { domain_images, image_images, .. } if domain_images == image_images => PatternMatch {
            pattern: "central stable letter",
            matched: true,
            reason: "both edge maps agree, so the stable letter centralizes the edge group".into(),
        },
        SplittingDecl::Hnn { .. } => PatternMatch {
            pattern: "central stable letter",
            matched: false,
            reason: "the two edge maps differ".into(),
        },
        SplittingDecl::Amalgam { .. } => PatternMatch {
            pattern: "central stable letter",
            matched: false,
            reason: "not an HNN extension".into(),
        },
    };
    let double = match decl {
        SplittingDecl::Amalgam { left, right, left_images, right_images, .. } => match rename_suffix(left, right) {
            None => PatternMatch {
                pattern: "double",
                matched: false,
                reason: "the right factor is not a suffixed copy of the left".into(),
            },
            Some(_) if left_images != right_images => PatternMatch {
                pattern: "double",
                matched: false,
                reason: "the edge maps differ after renaming".into(),
            },
            Some(suffix) => PatternMatch {
                pattern: "double",
                matched: true,
                reason: format!("right factor is the left renamed with suffix {suffix:?}"),
            },
        },
        SplittingDecl::Hnn { .. } => PatternMatch {
            pattern: "double",
            matched: false,
            reason: "not an amalgam".into(),
        },
    };

    let (ambient, images) = match decl {
        SplittingDecl::Amalgam { left, left_images, .. } => (left, left_images),
        SplittingDecl::Hnn { base, domain_images, .. } => (base, domain_images),
    };
    let edge_ball = edge_window(ambient, decl.edge(), images, probe, budget)?;
    let edge_ends = Some(end_report(&edge_ball, inner, Some(probe))?);
    let product_ends = if central_stable.matched {
        Some(end_report(&ray_product(&edge_ball, probe)?, inner, Some(probe))?)
    } else {
        None
    };
    let swap_samples = if double.matched {
        let SplittingDecl::Amalgam { left, right, edge, left_images, right_images } = decl else {
            unreachable!("double pattern only matches amalgams")
        };
        Some(check_swap(left, right, edge, left_images, right_images)?)
    } else {
        None
    };

    let multi = edge_ends.as_ref().is_some_and(|e| e.unbounded_count >= 2);
    let mut conclusions = Vec::new();
    if central_stable.matched && multi {
        conclusions.push(format!(
            "halfspaces of the splitting are one-ended, assuming G is one-ended {CITE_PRODUCT}"
        ));
        conclusions.push(format!(
            "H^2(G, ZG) is nonzero, assuming G is finitely presented and one-ended {CITE_PRODUCT}"
        ));
    }
    if double.matched && multi {
        conclusions.push(format!(
            "halfspaces of the splitting are one-ended, assuming G is one-ended {CITE_DOUBLE}"
        ));
    }
    Ok(CheckReport { central_stable, double, edge_ends, product_ends, swap_samples, conclusions })
}

/// The suffix `s` with `right == left.renamed(s)`, if any.
fn rename_suffix(left: &MarkedGroup, right: &MarkedGroup) -> Option<String> {
    if !left.same_shape(right) {
        return None;
    }
    let (ln, rn) = (left.names(), right.names());
    let suffix = rn.first()?.strip_prefix(ln.first()?.as_str())?.to_string();
    (!suffix.is_empty() && *right == left.renamed(&suffix)).then_some(suffix)
}

fn edge_window(
    ambient: &MarkedGroup,
    edge: &MarkedGroup,
    images: &[Elem],
    radius: u32,
    budget: Option<usize>,
) -> Result<BallGraph, SplitError> {
    let gens = edge.names().into_iter().zip(images.iter().cloned()).collect();
    let cay = CayleyGraph::with_generators(ambient, gens)?;
    Ok(grow_ball(&cay, &cay.identity(), radius, budget)?.graph)
}

/// The ball of radius `radius` in `ℕ × Cay(C)` around `(0, 1)`: vertex
/// `(k, x)` sits at distance `k + |x|`.
fn ray_product(edge_ball: &BallGraph, radius: u32) -> Result<BallGraph, SplitError> {
    let mut ids = std::collections::HashMap::new();
    let mut labels = Vec::new();
    let mut dist = Vec::new();
    for k in 0..=radius {
        for v in 0..edge_ball.len() {
            let d = k + edge_ball.dist(v);
            if d <= radius {
                ids.insert((k, v), labels.len());
                labels.push(format!("t^{k}*{}", edge_ball.label(v)));
                dist.push(d);
            }
        }
    }
    let mut edges = Vec::new();
    for (&(k, v), &i) in &ids {
        if let Some(&j) = ids.get(&(k + 1, v)) {
            edges.push((i, j, 1));
        }
        for &(w, m) in edge_ball.neighbors(v) {
            if w > v {
                if let Some(&j) = ids.get(&(k, w)) {
                    edges.push((i, j, m));
                }
            }
        }
    }
    edges.sort_unstable();
    Ok(BallGraph::from_edges(labels, dist, radius, &edges)?)
}

/// Samples edge elements `c` and checks that renaming carries the left image
/// of `c` to its right image.
fn check_swap(
    left: &MarkedGroup,
    right: &MarkedGroup,
    edge: &MarkedGroup,
    left_images: &[Elem],
    right_images: &[Elem],
) -> Result<usize, SplitError> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5a17);
    let via = |g: &MarkedGroup, images: &[Elem], w: &[hst_groups::Letter]| {
        w.iter().fold(g.identity(), |acc, l| {
            let x = &images[l.gen()];
            g.mul(&acc, &if l.is_inverse() { g.inv(x) } else { x.clone() })
        })
    };
    for i in 0..SWAP_SAMPLES {
        let len = rng.gen_range(0..=8);
        let w = edge.random_word(&mut rng, len);
        let a = via(left, left_images, &w);
        let b = via(right, right_images, &w);
        // Elements are stored by generator position, so the renaming acts as
        // the identity on stored forms in both directions.
        if !right.owns(&a) || a != b || !left.owns(&b) {
            return Err(SplitError::Invalid(format!("swap check failed on sample {i}")));
        }
    }
    Ok(SWAP_SAMPLES)
}
