use hst_graph::samples::{finite_graph, Lattice};
use hst_graph::{
    bruteforce_min_separating, cmp_label_lists, end_probe, io, min_vertex_set_cut, BallGraph, Cut,
};
use proptest::prelude::*;

/// Random connected multigraph: a random spanning tree plus extra edges.
fn multigraph(max_n: usize) -> impl Strategy<Value = BallGraph> {
    (2..=max_n).prop_flat_map(|n| {
        let parents = proptest::collection::vec(any::<prop::sample::Index>(), n - 1);
        let extra = proptest::collection::vec((0..n, 0..n, 1u32..4), 0..2 * n);
        let mults = proptest::collection::vec(1u32..4, n - 1);
        (Just(n), parents, extra, mults).prop_map(|(n, parents, extra, mults)| {
            let mut edges = Vec::new();
            for v in 1..n {
                edges.push((parents[v - 1].index(v), v, mults[v - 1]));
            }
            edges.extend(extra.into_iter().filter(|(u, v, _)| u != v));
            finite_graph(n, &edges).unwrap()
        })
    })
}

/// Exhaustive s-t minimum over all vertex subsets, with the same shortlex
/// tie-break on sorted label lists as the max-flow routine.
fn exhaustive_min_cut(g: &BallGraph, s: usize, t: usize) -> Cut {
    let n = g.len();
    let mut best: Option<(u32, Vec<String>, Cut)> = None;
    for bits in 0u32..(1 << n) {
        if bits >> s & 1 == 0 || bits >> t & 1 == 1 {
            continue;
        }
        let mask: Vec<bool> = (0..n).map(|v| bits >> v & 1 == 1).collect();
        let cut = Cut::from_mask(g, &mask);
        let key = cut.label_key(g);
        let better = match &best {
            None => true,
            Some((size, k, _)) => {
                cut.size() < *size || (cut.size() == *size && cmp_label_lists(&key, k).is_lt())
            }
        };
        if better {
            best = Some((cut.size(), key, cut));
        }
    }
    best.unwrap().2
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn maxflow_matches_bruteforce(g in multigraph(10), s in 0usize..10, t in 0usize..10) {
        let (s, t) = (s % g.len(), t % g.len());
        prop_assume!(s != t);
        let cut = min_vertex_set_cut(&g, &[s], &[t]).unwrap();
        let brute = bruteforce_min_separating(&g, s, t).unwrap().unwrap();
        prop_assert_eq!(cut.size(), brute);
        prop_assert!(cut.sides_connected(&g));
    }

    #[test]
    fn tie_break_is_lex_least(g in multigraph(9), s in 0usize..9, t in 0usize..9) {
        let (s, t) = (s % g.len(), t % g.len());
        prop_assume!(s != t);
        let cut = min_vertex_set_cut(&g, &[s], &[t]).unwrap();
        let oracle = exhaustive_min_cut(&g, s, t);
        prop_assert_eq!(cut.side, oracle.side);
    }

    #[test]
    fn doubling_multiplicities_doubles_cuts(g in multigraph(9), s in 0usize..9, t in 0usize..9) {
        let (s, t) = (s % g.len(), t % g.len());
        prop_assume!(s != t);
        let mut walled = g.clone();
        walled.set_wall(vec![true; g.len()]).unwrap();
        let doubled = walled.scale_wall_edges(2);
        let a = min_vertex_set_cut(&walled, &[s], &[t]).unwrap();
        let b = min_vertex_set_cut(&doubled, &[s], &[t]).unwrap();
        prop_assert_eq!(b.size(), 2 * a.size());
        prop_assert_eq!(b.wall_weight, 2 * a.wall_weight);
        prop_assert_eq!(a.side, b.side);
    }

    #[test]
    fn json_round_trip(g in multigraph(12)) {
        prop_assert_eq!(io::from_json(&io::to_json(&g)).unwrap(), g.clone());
        prop_assert_eq!(io::from_dot(&io::to_dot(&g)).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lattice_end_counts(n in 1usize..=3, r in 1u32..9, gap in 2u32..4) {
        let big_r = (r + gap).min(11);
        prop_assume!(r + 1 < big_r);
        let z = Lattice(n);
        let rep = end_probe(&z, &z.origin(), r, big_r, None).unwrap();
        let expected = if n == 1 { 2 } else { 1 };
        prop_assert_eq!(rep.unbounded_count, expected);
        // A single-layer shell of the grid is totally disconnected, so
        // stability is only expected once R - 1 leaves a shell of width two.
        if big_r >= r + 3 {
            prop_assert!(rep.stable);
        }
    }
}
