mod common;

use hst_groups::{Letter, MarkedGroup};
use hst_splitting::affine::bs_splitting;
use hst_splitting::{
    artificial_split, cayley_window, halfspace_window, tree_of_spaces, ArtificialOutcome, HalfSide, HalfspaceBall,
    Intermediate, Side, SplitError, Splitting, TreeNode,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn both_sides(split: &Splitting, edge: &hst_splitting::GElem, radius: u32) -> (HalfspaceBall, HalfspaceBall, usize) {
    let ball = cayley_window(split, edge, radius, None).unwrap();
    let l = HalfspaceBall::from_window(split, &ball, edge, HalfSide::Left).unwrap();
    let r = HalfspaceBall::from_window(split, &ball, edge, HalfSide::Right).unwrap();
    (l, r, ball.points.len())
}

#[test]
fn free_splitting_halfspace() {
    let f2 = common::free_splitting();
    let h = halfspace_window(&f2, &f2.identity(), HalfSide::Left, 3, None).unwrap();
    // Identity plus reduced words of length 1..3 starting with a^±1.
    assert_eq!(h.graph.len(), 1 + 2 + 6 + 18);
    assert_eq!(h.graph.edge_count(), h.graph.len() - 1);
    assert!(h.connected);
    assert_eq!(h.wall.len(), 1);
    for p in &h.points {
        let label = f2.label(p);
        assert!(label == "1" || label.starts_with('a'), "{label}");
    }
    let ends = h.ends(1, None).unwrap();
    assert!(ends.unbounded_count >= 2);
}

#[test]
fn halfspaces_partition_the_window() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for split in [common::surface(), bs_splitting(2).unwrap(), common::dihedral_line(), common::free_splitting(), common::planes()] {
        let n = split.decl().letter_names().len();
        for _ in 0..3 {
            let word: Vec<Letter> = (0..3).map(|_| Letter::new(rng.gen_range(0..n), rng.gen())).collect();
            let edge = split.normalize(&word).unwrap();
            let (l, r, total) = both_sides(&split, &edge, 3);
            assert_eq!(l.wall, l.graph.wall_vertices());
            let wall_l: Vec<_> = l.wall.iter().map(|&v| &l.points[v]).collect();
            let wall_r: Vec<_> = r.wall.iter().map(|&v| &r.points[v]).collect();
            assert_eq!(wall_l, wall_r, "{}", split.name());
            assert_eq!(l.points.len() + r.points.len() - l.wall.len(), total, "{}", split.name());
            for p in &l.points {
                let in_right = split.in_translated_half(&edge, HalfSide::Right, p).unwrap();
                assert_eq!(in_right, split.on_translated_wall(&edge, p).unwrap());
            }
        }
    }
}

#[test]
fn surface_halfspaces_are_one_ended() {
    let s = common::surface();
    let (l, r, _) = both_sides(&s, &s.identity(), 4);
    for h in [l, r] {
        let e = h.ends(1, None).unwrap();
        assert_eq!(e.unbounded_count, 1);
        assert!(e.stable);
        assert!(h.connected);
        assert!(h.wall_window().is_connected());
    }
}

#[test]
fn artificial_side_has_several_ends() {
    let ArtificialOutcome::Split(g) = artificial_split(&common::mixed(), &common::mixed_intermediate()).unwrap() else {
        panic!("expected a proper split");
    };
    assert_eq!(g.generator_names(), ["a", "b", "f", "r_l", "d", "e"]);
    let (l, r, _) = both_sides(&g, &g.identity(), 4);
    let left = l.ends(1, None).unwrap();
    assert!(left.unbounded_count >= 2 && left.stable, "{}", left.summary());
    let right = r.ends(1, None).unwrap();
    assert_eq!(right.unbounded_count, 1);
}

#[test]
fn one_ended_vertex_groups_give_one_ended_halfspaces() {
    let split = common::planes();
    for side in [Side::Left, Side::Right] {
        let cay = hst_groups::CayleyGraph::standard(split.vertex_group(side));
        let ball = hst_graph::grow_ball(&cay, &cay.identity(), 6, None).unwrap();
        assert_eq!(hst_graph::end_report(&ball.graph, 2, None).unwrap().unbounded_count, 1);
    }
    let (l, r, _) = both_sides(&split, &split.identity(), 6);
    for h in [l, r] {
        let e = h.ends(2, None).unwrap();
        assert_eq!(e.unbounded_count, 1, "{} {}", h.side.name(), e.summary());
    }
}

#[test]
fn trees_of_spaces() {
    let bs = bs_splitting(2).unwrap();
    let x = tree_of_spaces(&bs, 4, None).unwrap();
    assert!(x.simplicial);
    assert!(x.tree_is_tree());
    assert!(!x.walls.is_empty());
    // ⟨a⟩ is distorted: t²·a^±7 leaves the radius-4 ball while t²·a^±8 =
    // a^±2·t² stays, so the cosets t²⟨a⟩ and t³⟨a⟩ are cut. They reconnect
    // one step further out.
    assert_eq!((x.disconnected_vertex_preimages, x.disconnected_walls), (2, 2));
    let bigger = tree_of_spaces(&bs, 5, None).unwrap();
    assert_eq!(x.disconnected_in(&bigger), (0, 0));
    let dihedral = tree_of_spaces(&common::dihedral_line(), 4, None).unwrap();
    assert_eq!(dihedral.disconnected_walls, 0);
    assert_eq!(dihedral.disconnected_vertex_preimages, 0);

    let f2 = common::free_splitting();
    let x = tree_of_spaces(&f2, 3, None).unwrap();
    assert!(x.simplicial && x.tree_is_tree());
    assert!(x.wall_windows().iter().all(|w| w.len() == 1));

    let whole = common::amalgam(
        "whole",
        MarkedGroup::free(&["x", "y"]),
        MarkedGroup::free(&["u", "v"]),
        MarkedGroup::free(&["p", "q"]),
        &["x", "y"],
        &["u", "v"],
    );
    assert!(whole.is_trivial());
    let x = tree_of_spaces(&whole, 3, None).unwrap();
    assert_eq!(x.nodes.len(), 1);
    assert!(matches!(x.nodes[0], TreeNode::Vertex(_)));
    assert_eq!(x.graph.len(), cayley_window(&whole, &whole.identity(), 3, None).unwrap().points.len());
}

#[test]
fn artificial_degenerate_cases() {
    let mixed = common::mixed();
    let right = common::mixed_right();
    let edge_only = Intermediate {
        group: MarkedGroup::free_abelian(&["p", "q"]),
        edge_images: vec![
            MarkedGroup::free_abelian(&["p", "q"]).parse("p").unwrap(),
            MarkedGroup::free_abelian(&["p", "q"]).parse("q").unwrap(),
        ],
        right_images: vec![right.parse("a2").unwrap(), right.parse("b2").unwrap()],
    };
    assert!(matches!(artificial_split(&mixed, &edge_only).unwrap(), ArtificialOutcome::Unchanged(_)));

    let whole = Intermediate {
        group: right.renamed("_d"),
        edge_images: vec![right.renamed("_d").parse("a2_d").unwrap(), right.renamed("_d").parse("b2_d").unwrap()],
        right_images: right.generators(),
    };
    assert!(matches!(artificial_split(&mixed, &whole).unwrap(), ArtificialOutcome::TrivialEdge));

    let d = MarkedGroup::free(&["r"]);
    let missing = Intermediate {
        edge_images: vec![d.identity(), d.identity()],
        right_images: vec![right.parse("c").unwrap()],
        group: d,
    };
    assert!(matches!(artificial_split(&mixed, &missing), Err(SplitError::Containment(_))));
}
