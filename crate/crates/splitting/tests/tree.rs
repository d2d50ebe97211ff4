mod common;

use std::sync::OnceLock;

use hst_graph::{grow_ball, NeighborOracle};
use hst_groups::{Letter, MarkedGroup};
use hst_splitting::affine::bs_splitting;
use hst_splitting::{BassSerreTree, GElem, Side, SplitError, Splitting};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_elem(split: &Splitting, rng: &mut ChaCha8Rng, len: usize) -> GElem {
    let n = split.decl().letter_names().len();
    let word: Vec<Letter> = (0..len).map(|_| Letter::new(rng.gen_range(0..n), rng.gen())).collect();
    split.normalize(&word).unwrap()
}

#[test]
fn dihedral_tree_is_a_line() {
    let split = common::dihedral_line();
    let tree = BassSerreTree::new(&split, 3).unwrap();
    for d in tree.degrees() {
        assert_eq!(d.index, Some(2));
        assert_eq!(d.visible, 2);
        assert!(!d.frontier_limited());
    }
    let ball = grow_ball(&tree, &tree.basepoint(), 6, None).unwrap();
    assert_eq!(ball.graph.len(), 13);
    assert_eq!(ball.graph.edge_count(), 12);
    assert!((0..13).all(|v| ball.graph.degree(v) <= 2));
    assert_eq!(ball.graph.frontier().len(), 2);
}

#[test]
fn surface_tree_degree_is_frontier_limited() {
    let split = common::surface();
    let tree = BassSerreTree::new(&split, 3).unwrap();
    for d in tree.degrees() {
        assert_eq!(d.index, None);
        assert!(d.frontier_limited());
        assert!(d.visible > 10);
    }
}

#[test]
fn bs12_tree_is_three_regular() {
    let split = bs_splitting(2).unwrap();
    let tree = BassSerreTree::new(&split, 2).unwrap();
    assert_eq!(tree.degrees()[0].index, Some(3));
    let ball = grow_ball(&tree, &tree.basepoint(), 3, None).unwrap();
    assert_eq!(ball.graph.len(), 1 + 3 + 6 + 12);
    assert_eq!(ball.graph.edge_count(), ball.graph.len() - 1);
}

#[test]
fn trivial_splittings_are_refused() {
    let onto_left = common::amalgam(
        "zz",
        MarkedGroup::free_abelian(&["x"]),
        MarkedGroup::free_abelian(&["y"]),
        MarkedGroup::free_abelian(&["c"]),
        &["x"],
        &["y^2"],
    );
    assert!(onto_left.is_trivial());
    assert!(matches!(BassSerreTree::new(&onto_left, 2), Err(SplitError::Trivial(_))));
    let automorphism = common::hnn("zt", MarkedGroup::free_abelian(&["a"]), MarkedGroup::free_abelian(&["c"]), &["a"], &["a^-1"], "t");
    assert!(automorphism.is_trivial());
    assert!(BassSerreTree::new(&automorphism, 2).is_err());
    // Ascending but not onto on both sides.
    assert!(!bs_splitting(2).unwrap().is_trivial());
}

#[test]
fn projection_examples() {
    let s = common::surface();
    assert_eq!(s.project(&s.identity()), s.basepoint());
    let c = s.parse("c").unwrap();
    let through = s.vertex_of(&c, Side::Right);
    assert_eq!(through, s.vertex_of(&s.identity(), Side::Right));
    let tree = BassSerreTree::new(&s, 2).unwrap();
    let ball = grow_ball(&tree, &tree.basepoint(), 2, None).unwrap();
    let v = ball.id_of_point(&s.project(&c)).unwrap();
    assert_eq!(ball.graph.dist(v), 2);
    assert_eq!(s.vertex_label(&s.project(&c)), "c.A");

    let bs = bs_splitting(2).unwrap();
    let tree = BassSerreTree::new(&bs, 2).unwrap();
    let ball = grow_ball(&tree, &tree.basepoint(), 1, None).unwrap();
    for w in ["t^-1", "t", "a*t"] {
        let v = ball.id_of_point(&bs.project(&bs.parse(w).unwrap())).unwrap();
        assert_eq!(ball.graph.dist(v), 1, "{w}");
    }
    // `a` fixes the basepoint, and `t^-1` and `a*t^-1` hit the same vertex.
    assert_eq!(bs.project(&bs.parse("a").unwrap()), bs.basepoint());
    assert_eq!(bs.project(&bs.parse("a^2*t^-1").unwrap()), bs.project(&bs.parse("t^-1*a").unwrap()));
}

fn fixtures() -> &'static [Splitting] {
    static FIXTURES: OnceLock<Vec<Splitting>> = OnceLock::new();
    FIXTURES.get_or_init(|| {
        vec![
            common::surface(),
            bs_splitting(2).unwrap(),
            bs_splitting(3).unwrap(),
            common::dihedral_line(),
            common::planes(),
        ]
    })
}

fn word_strategy() -> impl Strategy<Value = Vec<(usize, bool)>> {
    proptest::collection::vec((0usize..8, any::<bool>()), 0..8)
}

fn to_elem(split: &Splitting, word: &[(usize, bool)]) -> GElem {
    let n = split.decl().letter_names().len();
    let letters: Vec<Letter> = word.iter().map(|&(g, inv)| Letter::new(g % n, inv)).collect();
    split.normalize(&letters).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn projection_is_equivariant(which in 0usize..5, h in word_strategy(), g in word_strategy()) {
        let split = &fixtures()[which];
        let (h, g) = (to_elem(split, &h), to_elem(split, &g));
        let hg = split.mul(&h, &g).unwrap();
        prop_assert_eq!(split.project(&hg), split.act(&h, &split.project(&g)).unwrap());
        let moved = split.mul(&h, &split.edge_of(&g).unwrap().rep).unwrap();
        prop_assert_eq!(split.edge_of(&hg).unwrap(), split.edge_of(&moved).unwrap());
    }
}

#[test]
fn edges_join_adjacent_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for split in [common::surface(), bs_splitting(2).unwrap(), common::dihedral_line()] {
        let tree = BassSerreTree::new(&split, 6).unwrap();
        for _ in 0..100 {
            let g = random_elem(&split, &mut rng, 5);
            let (u, v) = split.edge_ends(&split.edge_of(&g).unwrap()).unwrap();
            // Tree edges are undirected; the far end of a local edge is
            // visible when its coset representative is short.
            let near = tree.neighbors(&u).unwrap();
            let far = tree.neighbors(&v).unwrap();
            assert!(near.contains(&v) || far.contains(&u), "{}", split.name());
        }
    }
}
