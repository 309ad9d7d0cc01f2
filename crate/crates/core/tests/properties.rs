use p3decomp::euler::{euler_tour, is_eulerian};
use p3decomp::format::{parse_digraph, write_digraph};
use p3decomp::generate::{generate, transitive_tournament, GraphKind};
use p3decomp::linegraph::split_transform;
use p3decomp::matching::{
    bipartite_max_matching, fractional_pm, gallai_edmonds, hall_violator, max_matching,
    tutte_witness,
};
use p3decomp::oracle::{brute_decompose, brute_fractional};
use p3decomp::rng::SplitMix64;
use p3decomp::{
    build_line_graph, decompose, kotzig_undirected, verify_certificate, verify_decomposition,
    Decision, Digraph, P3Policy, Partition3, UGraph, VertexSet,
};
use proptest::prelude::*;

fn digraph(max_n: usize, max_m: usize, asymmetric: bool) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n), 0..=max_m).prop_map(move |pairs| {
            let mut arcs: Vec<(usize, usize)> = Vec::new();
            for (u, v) in pairs {
                let clash = arcs.contains(&(u, v)) || (asymmetric && arcs.contains(&(v, u)));
                if u != v && !clash {
                    arcs.push((u, v));
                }
            }
            Digraph::new(n, arcs).unwrap()
        })
    })
}

fn ugraph(max_n: usize, max_m: usize) -> impl Strategy<Value = UGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n), 0..=max_m).prop_map(move |pairs| {
            let edges = pairs.into_iter().filter(|(u, v)| u != v);
            UGraph::new(n, edges).unwrap()
        })
    })
}

fn labels_for(n: usize) -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec(0u8..3, n)
}

fn matching_number_without(g: &UGraph, v: usize) -> usize {
    let edges = g.edges().iter().copied().filter(|&(a, b)| a != v && b != v);
    max_matching(&UGraph::new(g.vertex_count(), edges).unwrap()).size()
}

proptest! {
    #[test]
    fn handshake(d in digraph(8, 30, false)) {
        let out: usize = (0..d.order()).map(|v| d.out_degree(v)).sum();
        let inc: usize = (0..d.order()).map(|v| d.in_degree(v)).sum();
        prop_assert_eq!(out, d.size());
        prop_assert_eq!(inc, d.size());
    }

    #[test]
    fn cut_degrees_are_consistent(d in digraph(8, 30, false), mask in any::<u64>()) {
        let n = d.order();
        let s = VertexSet::from_mask(n, mask);
        let (plus, minus) = d.cut_degrees(&s).unwrap();
        let (rest_plus, rest_minus) = d.cut_degrees(&s.complement()).unwrap();
        prop_assert_eq!(plus, rest_minus);
        prop_assert_eq!(minus, rest_plus);
        let net: i64 = s.iter().map(|v| d.out_degree(v) as i64 - d.in_degree(v) as i64).sum();
        prop_assert_eq!(plus as i64 - minus as i64, net);
    }

    #[test]
    fn slack_matches_per_arc_count(d in digraph(7, 25, false), seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let labels: Vec<u8> = (0..d.order()).map(|_| rng.below(3) as u8).collect();
        let p = Partition3::from_labels(&labels).unwrap();
        let mut expected = 0i64;
        for a in d.arcs() {
            expected += match (labels[a.tail], labels[a.head]) {
                (0, 1) => -1,
                (1, 0) | (0, 0) | (1, 1) | (2, 0) | (1, 2) => 1,
                _ => 0,
            };
        }
        prop_assert_eq!(d.partition_slack(&p).unwrap(), expected);
    }

    #[test]
    fn partition_labels_round_trip(labels in (1usize..9).prop_flat_map(labels_for)) {
        let p = Partition3::from_labels(&labels).unwrap();
        prop_assert_eq!(p.labels(), labels);
    }

    #[test]
    fn policies_agree_without_digons(d in digraph(8, 30, true)) {
        let strict = build_line_graph(&d, P3Policy::StrictPath);
        let closed = build_line_graph(&d, P3Policy::AllowClosed);
        prop_assert_eq!(strict.edges(), closed.edges());
    }

    #[test]
    fn line_graph_edges_chain(d in digraph(7, 25, false)) {
        let l = build_line_graph(&d, P3Policy::StrictPath);
        for &(a, b) in l.edges() {
            let chain = |x: usize, y: usize| d.arc(x).head == d.arc(y).tail && d.arc(x).tail != d.arc(y).head;
            prop_assert!(chain(a, b) || chain(b, a));
        }
        let expected = (0..d.size())
            .flat_map(|a| (a + 1..d.size()).map(move |b| (a, b)))
            .filter(|&(a, b)| {
                let (x, y) = (d.arc(a), d.arc(b));
                (x.head == y.tail && x.tail != y.head) || (y.head == x.tail && y.tail != x.head)
            })
            .count();
        prop_assert_eq!(l.edges().len(), expected);
    }

    #[test]
    fn splitting_preserves_the_line_graph(d in digraph(8, 30, true)) {
        prop_assume!(!d.has_isolated_vertex());
        let s = split_transform(&d).unwrap();
        prop_assert_eq!(s.dprime.size(), d.size());
        let before = build_line_graph(&d, P3Policy::StrictPath);
        let after = build_line_graph(&s.dprime, P3Policy::StrictPath);
        prop_assert_eq!(before.edges(), after.edges());
        for (id, a) in s.dprime.arcs().iter().enumerate() {
            prop_assert_eq!(s.origin[a.tail].0, d.arc(id).tail);
            prop_assert_eq!(s.origin[a.head].0, d.arc(id).head);
        }
        let again = split_transform(&s.dprime).unwrap();
        prop_assert_eq!(again.dprime, s.dprime);
    }

    #[test]
    fn decompose_is_self_certifying(d in digraph(7, 12, false)) {
        for policy in [P3Policy::StrictPath, P3Policy::AllowClosed] {
            let decision = decompose(&d, policy);
            match &decision {
                Decision::Decomposable(dec) => prop_assert!(verify_decomposition(&d, dec, policy)),
                Decision::Refuted(c) => prop_assert!(verify_certificate(&d, c)),
            }
            let brute = brute_decompose(&d, policy).unwrap();
            prop_assert_eq!(decision.is_decomposable(), brute.is_some());
        }
    }

    #[test]
    fn max_matching_and_gallai_edmonds(g in ugraph(10, 20)) {
        let m = max_matching(&g);
        prop_assert!(m.is_valid_for(&g));
        let ge = gallai_edmonds(&g);
        let n = g.vertex_count();
        prop_assert_eq!(ge.deficiency, n - 2 * m.size());
        // D = vertices whose deletion leaves the matching number unchanged
        let expected: Vec<usize> = (0..n).filter(|&v| matching_number_without(&g, v) == m.size()).collect();
        prop_assert_eq!(&ge.d_set, &expected);
        for &a in &ge.a_set {
            prop_assert!(!ge.d_set.contains(&a));
            prop_assert!(g.neighbors(a).iter().any(|u| ge.d_set.contains(u)));
        }
        prop_assert_eq!(ge.d_set.len() + ge.a_set.len() + ge.c_set.len(), n);
        if ge.deficiency > 0 {
            let w = tutte_witness(&g).unwrap();
            let removed = g.mask_of(&w.s);
            let odd = g.odd_components_without(&removed);
            prop_assert_eq!(odd as i64 - w.s.len() as i64, ge.deficiency as i64);
        }
    }

    #[test]
    fn bipartite_engine_matches_general(d in digraph(8, 20, false), mask in any::<u64>()) {
        // bipartite graph: keep edges crossing a random side
        let n = d.order();
        let left = VertexSet::from_mask(n, mask);
        let edges = d.arcs().iter().map(|a| (a.tail, a.head)).filter(|&(u, v)| left.contains(u) != left.contains(v));
        let g = UGraph::new(n, edges).unwrap();
        let bm = bipartite_max_matching(&g, &left).unwrap();
        prop_assert!(bm.is_valid_for(&g));
        prop_assert_eq!(bm.size(), max_matching(&g).size());
        if bm.size() < left.len() {
            let hv = hall_violator(&g, &left).unwrap();
            let mut nb: Vec<usize> = hv.s.iter().flat_map(|&v| g.neighbors(v).to_vec()).collect();
            nb.sort();
            nb.dedup();
            prop_assert!(nb.len() < hv.s.len());
            prop_assert_eq!(nb, hv.neighborhood);
        }
    }

    #[test]
    fn fractional_agrees_with_subset_scan(g in ugraph(10, 18)) {
        let f = fractional_pm(&g).unwrap();
        let brute = brute_fractional(&g).unwrap();
        prop_assert_eq!(f.exists, brute.is_none());
        if let Some(w) = f.witness {
            let removed = g.mask_of(&w.s);
            prop_assert!(g.isolated_without(&removed) > w.s.len());
        }
        if max_matching(&g).is_perfect() {
            prop_assert!(f.exists);
        }
    }

    #[test]
    fn kotzig_splits_even_components(g in ugraph(9, 16)) {
        let r = kotzig_undirected(&g);
        let mut seen = std::collections::HashSet::new();
        for &[a, v, b] in &r.paths {
            prop_assert!(a != b);
            for (x, y) in [(a, v), (v, b)] {
                prop_assert!(g.has_edge(x, y));
                prop_assert!(seen.insert((x.min(y), x.max(y))));
            }
        }
        let odd_edges: usize = r
            .odd_components
            .iter()
            .map(|c| c.iter().map(|&v| g.degree(v)).sum::<usize>() / 2)
            .sum();
        prop_assert_eq!(seen.len() + odd_edges, g.edge_count());
    }

    #[test]
    fn eulerian_generator_and_tour(n in 3usize..9, m in 3usize..25, seed in any::<u64>()) {
        prop_assume!(m <= n * (n - 1) / 2);
        if let Ok(d) = generate(&GraphKind::RandomEulerian { n, m }, seed) {
            prop_assert_eq!(d.size(), m);
            prop_assert!(d.is_asymmetric());
            prop_assert!(is_eulerian(&d));
            let t = euler_tour(&d).unwrap();
            prop_assert!(t.is_valid_for(&d));
            let mut sorted = t.arcs.clone();
            sorted.sort();
            prop_assert_eq!(sorted, (0..m).collect::<Vec<_>>());
        }
    }

    #[test]
    fn text_format_round_trip(d in digraph(9, 30, false)) {
        let parsed = parse_digraph(&write_digraph(&d, None)).unwrap();
        prop_assert_eq!(parsed.digraph, d);
        prop_assert!(parsed.bipartition.is_none());
    }

    #[test]
    fn random_tournaments_are_tournaments(n in 0usize..12, seed in any::<u64>()) {
        let t = generate(&GraphKind::RandomTournament { n }, seed).unwrap();
        prop_assert!(t.is_tournament());
        prop_assert_eq!(t, generate(&GraphKind::RandomTournament { n }, seed).unwrap());
    }

    #[test]
    fn rng_helpers(seed in any::<u64>(), k in 1usize..1000, len in 0usize..40) {
        let mut rng = SplitMix64::new(seed);
        prop_assert!(rng.below(k) < k);
        let u = rng.unit();
        prop_assert!((0.0..1.0).contains(&u));
        let mut items: Vec<usize> = (0..len).collect();
        rng.shuffle(&mut items);
        items.sort();
        prop_assert_eq!(items, (0..len).collect::<Vec<_>>());
    }
}

#[test]
fn transitive_tournaments_are_acyclic() {
    for n in 0..10 {
        let t = transitive_tournament(n).unwrap();
        assert!(t.is_tournament());
        // every arc goes from a lower to a higher id, so no directed cycle
        assert!(t.arcs().iter().all(|a| a.tail < a.head));
        if n >= 2 {
            assert!(!t.is_strongly_connected());
        }
    }
}
