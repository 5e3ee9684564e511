use core::f64::consts::PI;

use qgap_core::chain::PumpkinChain;
use qgap_core::fem::{discrete_lambda1, discretize, lambda1_numeric, smallest_nonzero_eigenpair, FemError};
use qgap_core::MetricGraph;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn interval_with_extrapolation() {
    let g = MetricGraph::interval(1.0).unwrap();
    let r = lambda1_numeric(&g, 1e-5).unwrap();
    assert!(rel(r.value, PI * PI) < 1e-6, "{r:?}");
    assert!(r.error_estimate <= 1e-5 * r.value);
}

#[test]
fn equilateral_pumpkin() {
    let g = MetricGraph::pumpkin(3, 1.0).unwrap();
    let r = lambda1_numeric(&g, 1e-5).unwrap();
    assert!(rel(r.value, PI * PI) < 1e-5);
}

#[test]
fn coarse_mesh_is_rejected() {
    let g = MetricGraph::interval(1.0).unwrap();
    assert!(matches!(discretize(&g, 2.0), Err(FemError::MeshTooCoarse { .. })));
}

#[test]
fn refinement_decreases_the_discrete_value() {
    let g = MetricGraph::from_named(
        &["a", "b", "c"],
        &[("e0", "a", "b", 1.0), ("e1", "b", "c", 0.7), ("e2", "c", "a", 0.4), ("e3", "b", "b", 0.9)],
    )
    .unwrap();
    let mut h = 0.1;
    let mut prev = f64::INFINITY;
    for _ in 0..4 {
        let v = discrete_lambda1(&g, h).unwrap();
        assert!(v <= prev * (1.0 + 1e-12));
        prev = v;
        h /= 2.0;
    }
}

#[test]
fn second_order_convergence_on_the_interval() {
    let g = MetricGraph::interval(1.0).unwrap();
    let exact = PI * PI;
    let hs = [1.0 / 8.0, 1.0 / 16.0, 1.0 / 32.0, 1.0 / 64.0];
    let errs: Vec<f64> = hs.iter().map(|&h| discrete_lambda1(&g, h).unwrap() - exact).collect();
    let slope = (errs[0].ln() - errs[3].ln()) / (hs[0].ln() - hs[3].ln());
    assert!((slope - 2.0).abs() < 0.2, "slope {slope}");
}

#[test]
fn eigenvector_is_mass_orthogonal_to_constants() {
    let g = MetricGraph::from_named(
        &["a", "b", "c", "d"],
        &[("e0", "a", "b", 1.0), ("e1", "b", "c", 0.5), ("e2", "b", "d", 0.8), ("e3", "c", "d", 1.3)],
    )
    .unwrap();
    let f = discretize(&g, 0.05).unwrap();
    let pair = smallest_nonzero_eigenpair(&f, 1.0).unwrap();
    let ones = vec![1.0; f.node_count()];
    let mut m1 = vec![0.0; f.node_count()];
    f.apply_mass(&ones, &mut m1);
    let dot: f64 = pair.vector.iter().zip(&m1).map(|(a, b)| a * b).sum();
    let mut mv = vec![0.0; f.node_count()];
    f.apply_mass(&pair.vector, &mut mv);
    let norm: f64 = pair.vector.iter().zip(&mv).map(|(a, b)| a * b).sum::<f64>().sqrt();
    let total: f64 = m1.iter().sum::<f64>().sqrt();
    assert!(dot.abs() / (norm * total) < 1e-10);
}

#[test]
fn agrees_with_chain_solver_on_small_chains() {
    for pairs in [
        vec![(1.0, 2), (0.6, 3), (0.9, 1), (0.4, 4)],
        vec![(0.5, 1), (1.5, 5)],
        vec![(0.8, 3), (0.8, 1), (0.8, 7)],
    ] {
        let c = PumpkinChain::from_pairs(&pairs).unwrap();
        let g = c.to_metric_graph(1000).unwrap();
        let fem = lambda1_numeric(&g, 1e-5).unwrap().value;
        let exact = c.spectral_gap().lambda;
        assert!(rel(fem, exact) < 1e-4, "{pairs:?}: {fem} vs {exact}");
    }
}
