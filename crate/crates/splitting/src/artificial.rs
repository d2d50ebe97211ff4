use hst_groups::{Elem, Inclusion, Letter, MarkedGroup};

use crate::error::SplitError;
use crate::spec::{Side, Splitting, SplittingDecl};

/// An intermediate subgroup `C ≤ D ≤ B` for an amalgam `A ∗_C B`.
#[derive(Clone, Debug)]
pub struct Intermediate {
    pub group: MarkedGroup,
    /// Images of the edge-group generators in `D`.
    pub edge_images: Vec<Elem>,
    /// Images of the generators of `D` in `B`.
    pub right_images: Vec<Elem>,
}

#[derive(Clone, Debug)]
pub enum ArtificialOutcome {
    /// `D = C`: the splitting is returned as is.
    Unchanged(Splitting),
    /// `D = B`: the new edge group would be the whole right factor.
    TrivialEdge,
    /// `G = (A ∗_C D) ∗_D B`.
    Split(Splitting),
}

/// Rewrites `A ∗_C B` as `L ∗_D B` with `L = A ∗_C D`. Only handles `D` given
/// as a free product with one factor identified with `C` through the edge map;
/// `L` is then `A` free product the remaining factors, with their generators
/// suffixed `_l` to keep names apart from `D`.
pub fn artificial_split(split: &Splitting, mid: &Intermediate) -> Result<ArtificialOutcome, SplitError> {
    let SplittingDecl::Amalgam { left, right, edge, left_images, right_images } = split.decl() else {
        return Err(SplitError::Invalid("artificial splitting needs an amalgam".into()));
    };
    let d = &mid.group;
    let into_right = Inclusion::new(d, right, mid.right_images.clone())?;
    if mid.edge_images.len() != edge.rank() {
        return Err(SplitError::Invalid(format!(
            "{} edge images given for an edge group of rank {}",
            mid.edge_images.len(),
            edge.rank()
        )));
    }
    for (j, (c_in_d, c_in_b)) in mid.edge_images.iter().zip(right_images).enumerate() {
        d.check(c_in_d)?;
        if into_right.apply(c_in_d) != *c_in_b {
            return Err(SplitError::Containment(format!(
                "edge generator {} does not map through D onto its image in {}",
                edge.names()[j],
                right.describe()
            )));
        }
    }
    let edge_in_right = split.engine(Side::Right);
    if mid.right_images.iter().all(|y| edge_in_right.contains(y)) {
        return Ok(ArtificialOutcome::Unchanged(split.clone()));
    }
    if into_right.is_onto() {
        return Ok(ArtificialOutcome::TrivialEdge);
    }

    let MarkedGroup::FreeProduct(factors) = d else {
        return Err(SplitError::Group(hst_groups::GroupError::Capability(
            "intermediate group must be a free product with the edge group as a factor".into(),
        )));
    };
    let offsets = d.offsets();
    let factor = (0..factors.len())
        .find(|&i| {
            factors[i].same_shape(edge)
                && (0..edge.rank()).all(|k| mid.edge_images[k] == d.generator(offsets[i] + k))
        })
        .ok_or_else(|| {
            SplitError::Group(hst_groups::GroupError::Capability(
                "no free factor of the intermediate group matches the edge group".into(),
            ))
        })?;

    let mut parts = vec![left.clone()];
    parts.extend(
        factors
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != factor)
            .map(|(_, f)| f.map_names(&|n| format!("{n}_l"))),
    );
    let new_left = MarkedGroup::FreeProduct(parts);
    let new_left_images: Vec<Elem> = (0..d.rank())
        .map(|g| {
            let (i, local) = d.locate(g);
            if i == factor {
                new_left.eval(&left.word(&left_images[local]))
            } else {
                let shift: usize = factors[..i]
                    .iter()
                    .enumerate()
                    .filter(|&(h, _)| h != factor)
                    .map(|(_, f)| f.rank())
                    .sum();
                new_left.letter(Letter::new(left.rank() + shift + local, false))
            }
        })
        .collect();
    let decl = SplittingDecl::Amalgam {
        left: new_left,
        right: right.clone(),
        edge: d.clone(),
        left_images: new_left_images,
        right_images: mid.right_images.clone(),
    };
    Ok(ArtificialOutcome::Split(Splitting::new(&format!("{}-artificial", split.name()), decl)?))
}
