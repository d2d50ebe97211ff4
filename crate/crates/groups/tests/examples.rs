use std::collections::HashSet;

use hst_graph::{grow_ball, NeighborOracle};
use hst_groups::{CayleyGraph, Elem, GroupError, Inclusion, MarkedGroup, SubgroupEngine};

fn f2() -> MarkedGroup {
    MarkedGroup::free(&["a", "b"])
}

fn z2() -> MarkedGroup {
    MarkedGroup::free_abelian(&["a", "b"])
}

/// (ℤ_a × ℤ_b) ∗ ℤ_c
fn z2_star_z() -> MarkedGroup {
    MarkedGroup::FreeProduct(vec![z2(), MarkedGroup::free(&["c"])])
}

fn vec2(x: i64, y: i64) -> Elem {
    Elem::Vector(vec![x, y])
}

/// Every element spelled by a word of length ≤ `len` in `gens`.
fn subgroup_words(g: &MarkedGroup, gens: &[Elem], len: usize) -> HashSet<Elem> {
    let mut letters: Vec<Elem> = gens.to_vec();
    letters.extend(gens.iter().map(|x| g.inv(x)));
    let mut seen: HashSet<Elem> = HashSet::from([g.identity()]);
    let mut layer = vec![g.identity()];
    for _ in 0..len {
        let mut next = Vec::new();
        for x in &layer {
            for s in &letters {
                let y = g.mul(x, s);
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        layer = next;
    }
    seen
}

#[test]
fn free_reduction() {
    let g = f2();
    let ab = g.parse("a*b").unwrap();
    let binv = g.parse("b^-1").unwrap();
    assert_eq!(g.format(&g.mul(&ab, &binv)), "a");
}

#[test]
fn abelian_addition() {
    let g = z2();
    assert_eq!(g.mul(&vec2(1, 2), &vec2(3, -2)), vec2(4, 0));
}

#[test]
fn free_product_syllables_cancel() {
    let g = z2_star_z();
    let x = g.parse("a*c").unwrap();
    let y = g.parse("c^-1*b").unwrap();
    let prod = g.mul(&x, &y);
    assert_eq!(prod, Elem::Syllables(vec![(0, vec2(1, 1))]));
    assert_eq!(g.format(&prod), "a*b");
    // Independent check: evaluate the concatenated letter string.
    assert_eq!(prod, g.parse("a*c*c^-1*b").unwrap());
}

#[test]
fn printing_and_parsing() {
    let g = f2();
    let x = g.parse("a^2*b^-1").unwrap();
    assert_eq!(g.format(&x), "a^2*b^-1");
    assert_eq!(g.format(&g.identity()), "1");
    assert_eq!(g.format(&g.parse("[a,b]").unwrap()), "a*b*a^-1*b^-1");
    assert_eq!(g.parse("(a*b)^-2").unwrap(), g.parse("b^-1*a^-1*b^-1*a^-1").unwrap());
    assert!(matches!(g.parse("a*z"), Err(GroupError::UnknownGenerator(_))));
    assert!(matches!(g.parse("a*"), Err(GroupError::Parse { .. })));
}

#[test]
fn name_collisions_are_rejected() {
    let g = MarkedGroup::Direct(vec![MarkedGroup::free(&["a"]), MarkedGroup::free(&["a"])]);
    assert_eq!(g.validate(), Err(GroupError::NameCollision("a".into())));
    assert!(MarkedGroup::Direct(vec![MarkedGroup::free(&["a"])]).validate().is_err());
}

#[test]
fn cayley_graph_of_integers() {
    let z = MarkedGroup::free_abelian(&["t"]);
    let cay = CayleyGraph::standard(&z);
    let mut n: Vec<String> = cay
        .neighbors(&z.identity())
        .unwrap()
        .iter()
        .map(|v| cay.label(v))
        .collect();
    n.sort();
    assert_eq!(n, vec!["t", "t^-1"]);
}

#[test]
fn cayley_graph_of_free_group_is_four_regular() {
    let cay = CayleyGraph::standard(&f2());
    let ball = grow_ball(&cay, &cay.identity(), 3, None).unwrap();
    assert_eq!(ball.graph.len(), 1 + 4 + 12 + 36);
    for v in 0..ball.graph.len() {
        if !ball.graph.is_frontier(v) {
            assert_eq!(ball.graph.degree(v), 4);
        }
    }
}

#[test]
fn cayley_graph_of_grid() {
    let cay = CayleyGraph::standard(&z2());
    for r in 0..5u32 {
        let ball = grow_ball(&cay, &cay.identity(), r, None).unwrap();
        let r = r as usize;
        assert_eq!(ball.graph.len(), 2 * r * r + 2 * r + 1);
    }
}

#[test]
fn cayley_generators_are_deduplicated() {
    let g = f2();
    let named = vec![
        ("a".to_string(), g.parse("a").unwrap()),
        ("x".to_string(), g.parse("a^-1").unwrap()),
        ("b".to_string(), g.parse("b").unwrap()),
        ("y".to_string(), g.parse("b").unwrap()),
    ];
    let cay = CayleyGraph::with_generators(&g, named).unwrap();
    assert_eq!(cay.generator_names(), &["a".to_string(), "b".to_string()]);
}

#[test]
fn membership_in_free_subgroup() {
    let g = f2();
    let gens = vec![g.parse("a^2").unwrap(), g.parse("b").unwrap()];
    let h = SubgroupEngine::generated_by(&g, &gens).unwrap();
    let words = subgroup_words(&g, &gens, 6);
    let a2b = g.parse("a^2*b").unwrap();
    let a = g.parse("a").unwrap();
    assert!(words.contains(&a2b) && h.contains(&a2b));
    assert!(!words.contains(&a) && !h.contains(&a));
}

#[test]
fn membership_in_lattice() {
    let g = z2();
    let h = SubgroupEngine::generated_by(&g, &[vec2(2, 0), vec2(0, 2)]).unwrap();
    assert!(h.contains(&vec2(2, 4)));
    assert!(!h.contains(&vec2(1, 0)));
}

#[test]
fn membership_in_commutator_subgroup() {
    let g = f2();
    let gens = vec![g.parse("[a,b]").unwrap()];
    let h = SubgroupEngine::generated_by(&g, &gens).unwrap();
    let cube = g.parse("[a,b]^3").unwrap();
    let ab = g.parse("a*b").unwrap();
    let words = subgroup_words(&g, &gens, 3);
    assert!(words.contains(&cube) && h.contains(&cube));
    assert!(!h.contains(&ab));
    // a*b is not a power of the commutator: its length (2) is not a multiple of 4.
    assert!(words.iter().all(|w| g.length(w).is_multiple_of(4)));
}

#[test]
fn coset_rep_in_lattice() {
    let g = z2();
    let h = SubgroupEngine::generated_by(&g, &[vec2(2, 0), vec2(0, 2)]).unwrap();
    assert_eq!(h.right_rep(&vec2(3, 5)).unwrap(), vec2(1, 1));
}

#[test]
fn coset_rep_in_free_subgroup() {
    let g = f2();
    let gens = vec![g.parse("a^2").unwrap(), g.parse("b").unwrap()];
    let h = SubgroupEngine::generated_by(&g, &gens).unwrap();
    let rep = h.right_rep(&g.parse("a^3").unwrap()).unwrap();
    assert_eq!(g.format(&rep), "a");
}

#[test]
fn coset_rep_of_free_factor() {
    let g = z2_star_z();
    let h = SubgroupEngine::generated_by(&g, &[g.parse("a").unwrap(), g.parse("b").unwrap()]).unwrap();
    let x = g.parse("a*b*c^2*b").unwrap();
    assert_eq!(x, Elem::Syllables(vec![
        (0, vec2(1, 1)),
        (1, MarkedGroup::free(&["c"]).parse("c^2").unwrap()),
        (0, vec2(0, 1)),
    ]));
    let rep = h.right_rep(&x).unwrap();
    assert_eq!(g.format(&rep), "c^2*b");
    assert!(h.contains(&g.mul(&x, &g.inv(&rep))));
}

#[test]
fn mixed_subgroups_are_capability_errors() {
    let g = z2_star_z();
    let err = SubgroupEngine::generated_by(&g, &[g.parse("a*c").unwrap()]).unwrap_err();
    assert!(matches!(err, GroupError::Capability(_)));
    let d = MarkedGroup::Direct(vec![MarkedGroup::free(&["a"]), MarkedGroup::free(&["b"])]);
    let err = SubgroupEngine::generated_by(&d, &[d.parse("a*b").unwrap()]).unwrap_err();
    assert!(matches!(err, GroupError::Capability(_)));
}

#[test]
fn direct_factor_selection() {
    let d = MarkedGroup::Direct(vec![f2(), MarkedGroup::free(&["d"])]);
    let h = SubgroupEngine::generated_by(&d, &[d.parse("a").unwrap(), d.parse("d^2").unwrap()]).unwrap();
    assert!(h.contains(&d.parse("a^3*d^-2").unwrap()));
    assert!(!h.contains(&d.parse("b*d^2").unwrap()));
    let rep = h.right_rep(&d.parse("a^2*b*d^3").unwrap()).unwrap();
    assert_eq!(d.format(&rep), "b*d");
}

#[test]
fn inclusion_round_trips() {
    let c = MarkedGroup::free_abelian(&["p", "q"]);
    let a = MarkedGroup::free_abelian(&["a", "b", "f"]);
    let inc = Inclusion::new(&c, &a, vec![a.parse("a").unwrap(), a.parse("b").unwrap()]).unwrap();
    let x = c.parse("p^2*q^-1").unwrap();
    assert_eq!(a.format(&inc.apply(&x)), "a^2*b^-1");
    assert_eq!(inc.pull(&inc.apply(&x)), Some(x));
    assert_eq!(inc.pull(&a.parse("f").unwrap()), None);
}

#[test]
fn inclusion_rejects_relator_violations_and_kernels() {
    // ℤ² cannot map onto non-commuting elements of F₂.
    let c = MarkedGroup::free_abelian(&["p", "q"]);
    let err = Inclusion::new(&c, &f2(), vec![f2().parse("a").unwrap(), f2().parse("b").unwrap()]).unwrap_err();
    assert!(matches!(err, GroupError::Invalid(_)));
    // F₂ → ℤ is never injective.
    let z = MarkedGroup::free_abelian(&["t"]);
    let err = Inclusion::new(&f2(), &z, vec![z.parse("t").unwrap(), z.parse("t^2").unwrap()]).unwrap_err();
    assert!(matches!(err, GroupError::Invalid(_)));
    // a ↦ a², b ↦ a⁴ in F₂ has a kernel.
    let err = Inclusion::new(&f2(), &f2(), vec![f2().parse("a^2").unwrap(), f2().parse("a^4").unwrap()]).unwrap_err();
    assert!(matches!(err, GroupError::Invalid(_)));
}

#[test]
fn whole_group_detection() {
    assert!(SubgroupEngine::whole(&f2()).unwrap().is_whole());
    let g = f2();
    let h = SubgroupEngine::generated_by(&g, &[g.parse("a*b").unwrap(), g.parse("b").unwrap()]).unwrap();
    assert!(h.is_whole());
    let h = SubgroupEngine::generated_by(&z2(), &[vec2(1, 1), vec2(0, 1)]).unwrap();
    assert!(h.is_whole());
    let h = SubgroupEngine::generated_by(&z2(), &[vec2(2, 1), vec2(0, 1)]).unwrap();
    assert!(!h.is_whole());
}

#[test]
fn subgroup_index() {
    let g = f2();
    let h = SubgroupEngine::generated_by(&g, &[g.parse("a^2").unwrap(), g.parse("b").unwrap(), g.parse("a*b*a^-1").unwrap()]).unwrap();
    assert_eq!(h.index(), Some(2));
    let h = SubgroupEngine::generated_by(&g, &[g.parse("a^2").unwrap(), g.parse("b").unwrap()]).unwrap();
    assert_eq!(h.index(), None);
    let h = SubgroupEngine::generated_by(&z2(), &[vec2(2, 1), vec2(0, 3)]).unwrap();
    assert_eq!(h.index(), Some(6));
    assert_eq!(SubgroupEngine::generated_by(&z2(), &[vec2(2, 1)]).unwrap().index(), None);
}
