use core::f64::consts::PI;

use proptest::prelude::*;
use qgap_core::bounds::{
    bound_report, chain_upper, sharp_combinatorial_upper, BoundKind, FriedlanderConvention,
};
use qgap_core::fem::lambda1_numeric;
use qgap_core::{MetricGraph, PumpkinChain};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn pumpkin_attains_combinatorial_and_edge_count_bounds() {
    for k in [2usize, 3, 5] {
        let l = 0.8;
        let g = MetricGraph::pumpkin(k, l).unwrap();
        let lambda = PumpkinChain::from_pairs(&[(l, k as u64)]).unwrap().spectral_gap().lambda;
        let exact = (PI / l).powi(2);
        assert!(rel(lambda, exact) < 1e-9);
        let report = bound_report(&g, Some(lambda), FriedlanderConvention::AsPrinted);
        assert!(report.is_consistent());
        for kind in [BoundKind::SharpCombinatorial, BoundKind::EdgeCount] {
            let e = report.entry(kind).unwrap();
            assert!(rel(e.value.unwrap(), exact) < 1e-12, "{kind:?}");
            assert!(e.margin.unwrap().abs() < 1e-9 * exact);
        }
    }
}

#[test]
fn interval_report() {
    let g = MetricGraph::interval(2.0).unwrap();
    let lambda = (PI / 2.0).powi(2);
    let report = bound_report(&g, Some(lambda), FriedlanderConvention::Shifted);
    assert!(report.is_consistent());
    // the shifted Friedlander bound is attained by the interval
    let f = report.entry(BoundKind::Friedlander).unwrap();
    assert!(rel(f.value.unwrap(), lambda) < 1e-12);
    assert_eq!(report.stats.diam, 2.0);
}

#[test]
fn single_vertex_has_no_combinatorial_bounds() {
    let g = MetricGraph::circle(1.0).unwrap();
    let report = bound_report(&g, None, FriedlanderConvention::AsPrinted);
    assert!(report.entry(BoundKind::SharpCombinatorial).unwrap().value.is_none());
    assert!(report.entry(BoundKind::SharpDiameter).unwrap().value.is_none());
    assert!(report.entry(BoundKind::EdgeCount).unwrap().value.is_some());
}

#[test]
fn violation_is_flagged() {
    let g = MetricGraph::interval(1.0).unwrap();
    let report = bound_report(&g, Some(100.0 * PI * PI), FriedlanderConvention::AsPrinted);
    assert!(!report.is_consistent());
    assert!(report.entry(BoundKind::EdgeCount).unwrap().violated);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // the chain bound is the combinatorial bound of the chain's own vertices
    #[test]
    fn chain_bound_is_the_combinatorial_bound(m in 2usize..10, l in 0.1f64..10.0) {
        let a = chain_upper(m, l).unwrap();
        let b = sharp_combinatorial_upper(m + 1, l).unwrap();
        prop_assert!(rel(a, b) < 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn fem_gap_respects_the_report(ls in prop::collection::vec(0.3f64..2.0, 1..5), loops in prop::collection::vec(0.3f64..2.0, 0..2)) {
        let mut g = MetricGraph::path(&ls).unwrap();
        for (i, &l) in loops.iter().enumerate() {
            let mut edges = g.edges().to_vec();
            let v = i % g.vertex_count();
            edges.push(qgap_core::graph::Edge { name: format!("loop{i}"), from: v, to: v, length: l });
            g = MetricGraph::new(g.vertices().to_vec(), edges).unwrap();
        }
        let lambda = lambda1_numeric(&g, 1e-5).unwrap().value;
        let report = bound_report(&g, Some(lambda), FriedlanderConvention::AsPrinted);
        prop_assert!(report.is_consistent(), "{report:?}");
    }
}
