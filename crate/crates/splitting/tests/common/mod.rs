#![allow(dead_code)]

use hst_groups::MarkedGroup;
use hst_splitting::{Splitting, SplittingDecl};

pub fn amalgam(name: &str, left: MarkedGroup, right: MarkedGroup, edge: MarkedGroup, li: &[&str], ri: &[&str]) -> Splitting {
    let left_images = li.iter().map(|s| left.parse(s).unwrap()).collect();
    let right_images = ri.iter().map(|s| right.parse(s).unwrap()).collect();
    Splitting::new(name, SplittingDecl::Amalgam { left, right, edge, left_images, right_images }).unwrap()
}

pub fn hnn(name: &str, base: MarkedGroup, edge: MarkedGroup, di: &[&str], ii: &[&str], stable: &str) -> Splitting {
    let domain_images = di.iter().map(|s| base.parse(s).unwrap()).collect();
    let image_images = ii.iter().map(|s| base.parse(s).unwrap()).collect();
    let decl = SplittingDecl::Hnn { base, edge, domain_images, image_images, stable: stable.into() };
    Splitting::new(name, decl).unwrap()
}

/// Genus-two surface group as `F(a,b) ∗ F(c,d)` over `[a,b] = [c,d]`.
pub fn surface() -> Splitting {
    amalgam(
        "surface",
        MarkedGroup::free(&["a", "b"]),
        MarkedGroup::free(&["c", "d"]),
        MarkedGroup::free(&["w"]),
        &["[a,b]"],
        &["[c,d]"],
    )
}

/// `F₂ = ⟨a⟩ ∗ ⟨b⟩`.
pub fn free_splitting() -> Splitting {
    amalgam(
        "f2",
        MarkedGroup::free(&["a"]),
        MarkedGroup::free(&["b"]),
        MarkedGroup::free(&[]),
        &[],
        &[],
    )
}

/// `ℤ ∗_ℤ ℤ` with both inclusions of index two.
pub fn dihedral_line() -> Splitting {
    amalgam(
        "z2z",
        MarkedGroup::free_abelian(&["x"]),
        MarkedGroup::free_abelian(&["y"]),
        MarkedGroup::free_abelian(&["c"]),
        &["x^2"],
        &["y^2"],
    )
}

/// `ℤ² ∗_ℤ ℤ²` over the first coordinate on both sides.
pub fn planes() -> Splitting {
    amalgam(
        "z2z2",
        MarkedGroup::free_abelian(&["a", "b"]),
        MarkedGroup::free_abelian(&["c", "d"]),
        MarkedGroup::free_abelian(&["e"]),
        &["a"],
        &["c"],
    )
}

/// The right factor `((ℤ_a2 × ℤ_b2) ∗ ℤ_c) × ℤ_d × ℤ_e` of the seven-one
/// fixture.
pub fn mixed_right() -> MarkedGroup {
    MarkedGroup::Direct(vec![
        MarkedGroup::FreeProduct(vec![MarkedGroup::free_abelian(&["a2", "b2"]), MarkedGroup::free(&["c"])]),
        MarkedGroup::free(&["d"]),
        MarkedGroup::free(&["e"]),
    ])
}

/// `ℤ³ ∗_{ℤ²} B` with `B` from [`mixed_right`].
pub fn mixed() -> Splitting {
    amalgam(
        "mixed",
        MarkedGroup::free_abelian(&["a", "b", "f"]),
        mixed_right(),
        MarkedGroup::free_abelian(&["p", "q"]),
        &["a", "b"],
        &["a2", "b2"],
    )
}

/// The intermediate group `(ℤ_p × ℤ_q) ∗ ℤ_r` between the edge group of
/// [`mixed`] and its right factor.
pub fn mixed_intermediate() -> hst_splitting::Intermediate {
    let d = MarkedGroup::FreeProduct(vec![MarkedGroup::free_abelian(&["p", "q"]), MarkedGroup::free(&["r"])]);
    let b = mixed_right();
    hst_splitting::Intermediate {
        edge_images: vec![d.parse("p").unwrap(), d.parse("q").unwrap()],
        right_images: ["a2", "b2", "c"].iter().map(|x| b.parse(x).unwrap()).collect(),
        group: d,
    }
}

/// HNN extension of `(ℤ_a1 × ℤ_a2) ∗ ℤ_s` over `ℤ ∗ F₂` with a stable letter
/// commuting with the edge group.
pub fn central_stable_decl() -> SplittingDecl {
    let base = MarkedGroup::FreeProduct(vec![MarkedGroup::free_abelian(&["a1", "a2"]), MarkedGroup::free(&["s"])]);
    let edge = MarkedGroup::FreeProduct(vec![MarkedGroup::free_abelian(&["c1"]), MarkedGroup::free(&["c2", "c3"])]);
    let images: Vec<_> = ["a1", "s^2", "s*a1*s*a2*s"].iter().map(|w| base.parse(w).unwrap()).collect();
    SplittingDecl::Hnn { base, edge, domain_images: images.clone(), image_images: images, stable: "t".into() }
}

/// Double of `(F₂ × F₂ × F₂) ∗ F₂` across `ℤ³ ∗ F₂`.
pub fn double_decl() -> SplittingDecl {
    let left = MarkedGroup::FreeProduct(vec![
        MarkedGroup::Direct(vec![
            MarkedGroup::free(&["x1", "x2"]),
            MarkedGroup::free(&["y1", "y2"]),
            MarkedGroup::free(&["z1", "z2"]),
        ]),
        MarkedGroup::free(&["a1", "a2"]),
    ]);
    let edge = MarkedGroup::FreeProduct(vec![
        MarkedGroup::free_abelian(&["p1", "p2", "p3"]),
        MarkedGroup::free(&["q1", "q2"]),
    ]);
    let images: Vec<_> = ["x1", "y1", "z1", "[a1,a2]", "a1*x2*a2*y2*a1*z2"]
        .iter()
        .map(|w| left.parse(w).unwrap())
        .collect();
    SplittingDecl::Amalgam {
        right: left.renamed("'"),
        left,
        edge,
        left_images: images.clone(),
        right_images: images,
    }
}
