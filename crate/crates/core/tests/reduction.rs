use std::collections::BTreeSet;

use proptest::prelude::*;
use qgap_core::chain::PumpkinChain;
use qgap_core::fem::lambda1_numeric;
use qgap_core::graph::Edge;
use qgap_core::reduction::{
    choose_endpoints, enumerate_paths, prune_to_union, reduce, useful_edges, GraphPath, Mode,
};
use qgap_core::{BigUint, MetricGraph};

fn pairs(c: &PumpkinChain) -> Vec<(f64, u64)> {
    c.segments()
        .iter()
        .map(|s| (s.length, s.multiplicity.to_string().parse().unwrap()))
        .collect()
}

fn assert_chain(c: &PumpkinChain, expected: &[(f64, u64)]) {
    let got = pairs(c);
    assert_eq!(got.len(), expected.len(), "{got:?}");
    for (g, e) in got.iter().zip(expected) {
        assert!((g.0 - e.0).abs() < 1e-9 && g.1 == e.1, "{got:?} vs {expected:?}");
    }
}

/// The three-route graph with a cross edge between the inner vertices of the
/// middle and bottom routes.
fn three_routes() -> MetricGraph {
    MetricGraph::from_named(
        &["v0", "v3", "v2", "vD"],
        &[
            ("e14", "v0", "vD", 2.6),
            ("e2", "v0", "v3", 1.0),
            ("e5", "v3", "vD", 1.0),
            ("e3", "v0", "v2", 1.2),
            ("e6", "v2", "vD", 1.2),
            ("e7", "v3", "v2", 0.5),
        ],
    )
    .unwrap()
}

#[test]
fn endpoints() {
    let g = MetricGraph::interval(2.0).unwrap();
    let (p, a, b, d, ins) = choose_endpoints(&g, Mode::Metric).unwrap();
    assert_eq!((p.vertex_count(), a, b, d), (2, 0, 1, 2.0));
    assert!(ins.is_empty());

    let g = MetricGraph::circle(2.0).unwrap();
    let (p, a, b, d, ins) = choose_endpoints(&g, Mode::Metric).unwrap();
    assert_eq!(d, 1.0);
    assert!(p.vertex_count() <= 3 && !ins.is_empty());
    let table = p.vertex_distances();
    assert!((table.get(a, b) - 1.0).abs() < 1e-12);

    let g = MetricGraph::from_named(
        &["A", "B", "C"],
        &[("AB", "A", "B", 5.0), ("BC", "B", "C", 3.0), ("CA", "C", "A", 4.0)],
    )
    .unwrap();
    let (_, a, b, d, _) = choose_endpoints(&g, Mode::Combinatorial).unwrap();
    assert_eq!((a, b, d), (0, 1, 5.0));
}

#[test]
fn path_enumeration_examples() {
    let g = MetricGraph::path(&[1.0, 2.0, 0.5]).unwrap();
    assert_eq!(enumerate_paths(&g, 0, 3).unwrap().len(), 1);

    let g = MetricGraph::from_named(
        &["s", "t"],
        &[("c", "s", "t", 3.0), ("a", "s", "t", 1.0), ("b", "s", "t", 2.0)],
    )
    .unwrap();
    let lens: Vec<f64> = enumerate_paths(&g, 0, 1).unwrap().iter().map(|p| p.length).collect();
    assert_eq!(lens, vec![1.0, 2.0, 3.0]);
}

#[test]
fn pruning_removes_dangling_edges() {
    let g = MetricGraph::from_named(
        &["a", "b", "c", "d"],
        &[("ab", "a", "b", 1.0), ("bc", "b", "c", 1.0), ("bd", "b", "d", 0.3)],
    )
    .unwrap();
    let paths = enumerate_paths(&g, 0, 2).unwrap();
    let (pruned, _) = prune_to_union(&g, &paths).unwrap();
    assert_eq!(pruned.edge_count(), 2);
    assert!(pruned.edge_id("bd").is_none());
}

#[test]
fn fixed_points() {
    let c = PumpkinChain::from_pairs(&[(0.5, 3), (1.0, 1), (0.7, 4)]).unwrap();
    let g = c.to_metric_graph(100).unwrap();
    let (out, _) = reduce(&g, Mode::Metric).unwrap();
    assert_chain(&out, &[(0.5, 3), (1.0, 1), (0.7, 4)]);
    let (out, _) = reduce(&g, Mode::Combinatorial).unwrap();
    assert_chain(&out, &[(0.5, 3), (1.0, 1), (0.7, 4)]);

    let g = MetricGraph::pumpkin(4, 1.5).unwrap();
    let (out, trace) = reduce(&g, Mode::Metric).unwrap();
    assert_chain(&out, &[(1.5, 4)]);
    assert_eq!(trace.levels, vec![0.0, 1.5]);
}

#[test]
fn unequal_parallel_edges_become_a_pumpkin() {
    let g = MetricGraph::from_named(&["a", "b"], &[("short", "a", "b", 1.0), ("long", "a", "b", 3.0)]).unwrap();
    let (out, trace) = reduce(&g, Mode::Combinatorial).unwrap();
    assert_chain(&out, &[(1.0, 2)]);
    assert_eq!(trace.equalized[1].length, 1.0);
}

#[test]
fn pendant_at_interior_vertex() {
    let g = MetricGraph::from_named(
        &["a", "b", "c", "d"],
        &[("ab", "a", "b", 1.0), ("bc", "b", "c", 1.0), ("bd", "b", "d", 0.5)],
    )
    .unwrap();
    let (out, _) = reduce(&g, Mode::Metric).unwrap();
    assert_chain(&out, &[(1.0, 1), (1.0, 1)]);
}

#[test]
fn two_routes_with_aligned_midpoints() {
    let g = MetricGraph::from_named(
        &["s", "m1", "m2", "t"],
        &[("a", "s", "m1", 1.0), ("b", "m1", "t", 1.0), ("c", "s", "m2", 1.0), ("d", "m2", "t", 1.0)],
    )
    .unwrap();
    let (out, _) = reduce(&g, Mode::Combinatorial).unwrap();
    assert_chain(&out, &[(1.0, 2), (1.0, 2)]);
}

#[test]
fn three_routes_with_cross_edge() {
    let g = three_routes();
    let (out, trace) = reduce(&g, Mode::Combinatorial).unwrap();
    assert_chain(&out, &[(1.0, 3), (1.0, 3)]);
    let e7 = trace.equalized.iter().find(|e| e.name == "e7").unwrap();
    assert_eq!(e7.length, 0.0);
    assert_eq!(trace.paths[0].length, 2.0);
    assert!(trace.paths.windows(2).all(|w| w[0].length <= w[1].length));
}

/// Every simple path by depth-first search.
fn all_simple_paths(g: &MetricGraph, s: usize, t: usize) -> Vec<GraphPath> {
    fn go(g: &MetricGraph, t: usize, cur: &mut GraphPath, seen: &mut Vec<bool>, out: &mut Vec<GraphPath>) {
        let u = *cur.vertices.last().unwrap();
        if u == t {
            out.push(cur.clone());
            return;
        }
        for (id, e) in g.edges().iter().enumerate() {
            if e.is_loop() {
                continue;
            }
            let w = if e.from == u {
                e.to
            } else if e.to == u {
                e.from
            } else {
                continue;
            };
            if seen[w] {
                continue;
            }
            seen[w] = true;
            cur.edges.push(id);
            cur.vertices.push(w);
            cur.length += e.length;
            go(g, t, cur, seen, out);
            cur.length -= e.length;
            cur.vertices.pop();
            cur.edges.pop();
            seen[w] = false;
        }
    }
    let mut out = Vec::new();
    let mut seen = vec![false; g.vertex_count()];
    seen[s] = true;
    let mut cur = GraphPath {
        edges: vec![],
        vertices: vec![s],
        length: 0.0,
    };
    go(g, t, &mut cur, &mut seen, &mut out);
    out
}

fn brute_force_kept(g: &MetricGraph, s: usize, t: usize) -> Vec<BTreeSet<usize>> {
    let mut all = all_simple_paths(g, s, t);
    for p in &mut all {
        p.length = p.edges.iter().map(|&e| g.edges()[e].length).sum();
    }
    all.sort_by(|a, b| a.length.total_cmp(&b.length).then(a.edges.cmp(&b.edges)));
    let on_some: BTreeSet<usize> = all.iter().flat_map(|p| p.edges.iter().copied()).collect();
    let mut covered = BTreeSet::new();
    let mut kept = Vec::new();
    for p in all {
        if covered == on_some {
            break;
        }
        let set: BTreeSet<usize> = p.edges.iter().copied().collect();
        if !set.is_subset(&covered) {
            covered.extend(set.iter().copied());
            kept.push(set);
        }
    }
    kept
}

#[test]
fn three_routes_paths_match_exhaustive_enumeration() {
    let g = three_routes();
    let got: Vec<BTreeSet<usize>> = enumerate_paths(&g, 0, 3)
        .unwrap()
        .iter()
        .map(|p| p.edges.iter().copied().collect())
        .collect();
    assert_eq!(got, brute_force_kept(&g, 0, 3));
    // no kept path visits a vertex twice
    for p in enumerate_paths(&g, 0, 3).unwrap() {
        let set: BTreeSet<_> = p.vertices.iter().collect();
        assert_eq!(set.len(), p.vertices.len());
    }
}

#[test]
fn crossing_paths_fall_back_to_distance_levels() {
    // the third path runs through x1 against the levels set by the second,
    // so no shortening of its own edges can give it length D
    let g = MetricGraph::from_named(
        &["v0", "v1", "v2", "v3"],
        &[
            ("t1", "v0", "v1", 1.35),
            ("t2", "v1", "v2", 1.1),
            ("t3", "v0", "v3", 0.8),
            ("x0", "v2", "v3", 0.65),
            ("x1", "v1", "v3", 0.3),
        ],
    )
    .unwrap();
    let (chain, trace) = reduce(&g, Mode::Combinatorial).unwrap();
    assert!(trace.fallback.is_some());
    // d(v0, ·) = 0, 1.1, 1.45, 0.8 for v0, v1, v2, v3
    assert_chain(&chain, &[(0.8, 2), (0.3, 3), (0.35, 2)]);
    let before = lambda1_numeric(&g, 1e-5).unwrap().value;
    assert!(chain.spectral_gap().lambda >= before);
}

fn arb_graph(max_edges: usize) -> impl Strategy<Value = MetricGraph> {
    (2usize..6)
        .prop_flat_map(move |n| {
            let tree = prop::collection::vec((0usize..100, 0.3f64..2.0), n - 1);
            let extra = prop::collection::vec((0usize..n, 0usize..n, 0.3f64..2.0), 0..=(max_edges + 1 - n));
            (Just(n), tree, extra)
        })
        .prop_map(|(n, tree, extra)| {
            let mut edges = Vec::new();
            for (i, (p, l)) in tree.into_iter().enumerate() {
                let v = i + 1;
                edges.push(Edge {
                    name: format!("t{v}"),
                    from: p % v,
                    to: v,
                    length: l,
                });
            }
            for (k, (a, b, l)) in extra.into_iter().enumerate() {
                edges.push(Edge {
                    name: format!("x{k}"),
                    from: a,
                    to: b,
                    length: l,
                });
            }
            MetricGraph::new((0..n).map(|i| format!("v{i}")).collect(), edges).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_matches_brute_force(g in arb_graph(7), s in 0usize..6, k in 0usize..6) {
        let n = g.vertex_count();
        let s = s % n;
        let t = (s + 1 + k % (n - 1)) % n;
        let got: Vec<BTreeSet<usize>> = enumerate_paths(&g, s, t)
            .unwrap()
            .iter()
            .map(|p| p.edges.iter().copied().collect())
            .collect();
        prop_assert_eq!(got, brute_force_kept(&g, s, t));
        let useful = useful_edges(&g, s, t);
        let on_some: BTreeSet<usize> = all_simple_paths(&g, s, t).iter().flat_map(|p| p.edges.clone()).collect();
        for e in 0..g.edge_count() {
            prop_assert_eq!(useful[e], on_some.contains(&e));
        }
    }

    #[test]
    fn reduction_statements(g in arb_graph(7)) {
        for mode in [Mode::Metric, Mode::Combinatorial] {
            if mode == Mode::Combinatorial && g.vertex_count() < 2 {
                continue;
            }
            let (chain, trace) = reduce(&g, mode).unwrap();
            let d = match mode {
                Mode::Metric => g.diameter().value,
                Mode::Combinatorial => g.combinatorial_diameter().unwrap().0,
            };
            prop_assert!((chain.total_length() - d).abs() <= 1e-12 * d);
            prop_assert!(chain.total_length() <= g.total_length() * (1.0 + 1e-12));
            let n_star = chain.len() + 1;
            match mode {
                Mode::Metric => prop_assert!(n_star <= g.vertex_count() + 2),
                Mode::Combinatorial => prop_assert!(n_star <= g.vertex_count()),
            }
            prop_assert_eq!(trace.levels.len(), n_star);
            prop_assert!(chain.segments().iter().all(|s| s.multiplicity >= BigUint::from(1u32)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn reduction_does_not_lower_the_gap(g in arb_graph(6)) {
        let before = lambda1_numeric(&g, 1e-4).unwrap().value;
        for mode in [Mode::Metric, Mode::Combinatorial] {
            let (chain, _) = reduce(&g, mode).unwrap();
            let after = chain.spectral_gap().lambda;
            prop_assert!(after >= before * (1.0 - 1e-3), "{mode:?}: {after} < {before}");
        }
    }
}

#[test]
fn near_zero_edge_next_to_an_endpoint() {
    let g = MetricGraph::from_named(
        &["v0", "x", "v1", "v2", "v3", "y"],
        &[
            ("a", "v0", "x", 2.220446049250313e-16),
            ("b", "x", "v1", 0.45438708560881047),
            ("c", "v1", "v2", 1.6986258843210271),
            ("d", "v2", "v3", 1.0819028687906014),
            ("e", "v3", "y", 0.28995747798789506),
            ("f", "y", "v2", 1.3718603467784962),
        ],
    )
    .unwrap();
    let paths = enumerate_paths(&g, 1, 5).unwrap();
    assert_eq!(paths.len(), 2);
    assert!(paths.iter().all(|p| !p.edges.contains(&0)));
}
