use core::f64::consts::PI;

use proptest::prelude::*;
use qgap_core::chain::{matching_determinant_m2, secular_m2, PieceShape, PumpkinChain, Segment};
use qgap_core::BigUint;

fn chain(pairs: &[(f64, u64)]) -> PumpkinChain {
    PumpkinChain::from_pairs(pairs).unwrap()
}

fn big_example() -> PumpkinChain {
    let k = |s: &str| s.parse::<BigUint>().unwrap();
    PumpkinChain::new(vec![
        Segment::new(0.2, k("1")),
        Segment::new(0.2, k("10000000000")),
        Segment::new(0.4, k("100000000000000000000")),
        Segment::new(0.2, k("20000000000")),
    ])
    .unwrap()
}

/// Smallest positive root of `f` by a dense scan followed by bisection.
fn first_root(f: impl Fn(f64) -> f64, hi: f64) -> f64 {
    let steps = 20_000;
    let mut a = hi / steps as f64 * 1e-3;
    let mut fa = f(a);
    for i in 1..=steps {
        let b = hi * i as f64 / steps as f64;
        let fb = f(b);
        if fa == 0.0 {
            return a;
        }
        if fa.signum() != fb.signum() {
            let (mut lo, mut up) = (a, b);
            for _ in 0..200 {
                let mid = 0.5 * (lo + up);
                if f(mid).signum() == f(lo).signum() {
                    lo = mid;
                } else {
                    up = mid;
                }
            }
            return 0.5 * (lo + up);
        }
        a = b;
        fa = fb;
    }
    panic!("no root below {hi}");
}

/// Midpoint-rule quadrature of `∫ f ρ` on a fine grid.
fn quadrature_mean(c: &PumpkinChain, f: impl Fn(f64) -> f64) -> f64 {
    let n = 200_000;
    let l = c.total_length();
    let h = l / n as f64;
    (0..n)
        .map(|i| {
            let x = (i as f64 + 0.5) * h;
            let k = c.multiplicity_f64(c.segment_at(x).unwrap());
            f(x) * k * h
        })
        .sum()
}

#[test]
fn weight_of_the_large_example() {
    let c = big_example();
    assert_eq!(
        c.weight_at(0.5).unwrap(),
        &"100000000000000000000".parse::<BigUint>().unwrap()
    );
}

#[test]
fn two_pumpkin_chain_has_gap_at_half_pi() {
    let c = chain(&[(1.0, 4), (1.0, 1)]);
    let r = c.eigenvalue(1, 1e-13).unwrap();
    assert!((r.sigma - PI / 2.0).abs() < 1e-12);
    assert_eq!(r.lambda, r.sigma * r.sigma);
    assert!(r.bracket_width <= 1e-13);
    // terminal angle sits on the first Neumann value
    assert!((c.prufer_sweep(PI / 2.0) - PI).abs() < 1e-12);
    // secular equation written out directly: 4 sin σ cos σ − cos σ sin σ
    let root = first_root(|s| 4.0 * s.sin() * s.cos() - s.cos() * s.sin(), 3.0);
    assert!((root - r.sigma).abs() < 1e-10);
}

#[test]
fn printed_secular_form_disagrees_off_the_diagonal() {
    // uniform weight: the true gap of [(0.2,1),(0.5,1)] is (π/0.7)², where
    // the determinant vanishes but the printed form does not
    let sigma = PI / 0.7;
    assert!(matching_determinant_m2(1.0, 1.0, 0.2, 0.5, sigma).abs() < 1e-12);
    assert!(secular_m2(1.0, 1.0, 0.2, 0.5, sigma).abs() > 0.5);
    // on equal lengths the two forms share their roots
    assert!(matching_determinant_m2(4.0, 1.0, 1.0, 1.0, PI / 2.0).abs() < 1e-15);
}

#[test]
fn small_sigma_barely_turns() {
    let c = chain(&[(1.0, 1), (1.0, 10_000_000_000)]);
    let phi = c.prufer_sweep(0.01);
    assert!(phi > 0.0 && phi < 0.1);
}

#[test]
fn interval_eigenvalues() {
    for l in [0.3, 1.0, 2.5] {
        let c = chain(&[(l, 1)]);
        for n in 1..4 {
            let r = c.eigenvalue(n, 1e-12).unwrap();
            let exact = (n as f64 * PI / l).powi(2);
            assert!((r.lambda - exact).abs() / exact < 1e-9);
        }
    }
}

#[test]
fn large_multiplicity_example() {
    let c = big_example();
    let r = c.spectral_gap();
    assert!((r.sigma / PI - 2.49998).abs() < 1e-4);
    let phi = c.eigenfunction(&r).unwrap();
    let zeros = phi.zeros();
    assert_eq!(zeros.len(), 1);
    assert!((zeros[0] - 0.6).abs() < 1e-3);
}

#[test]
fn secular_examples() {
    assert!(secular_m2(1.0, 1.0, 0.5, 0.5, PI).abs() < 1e-15);
    assert!(secular_m2(4.0, 1.0, 1.0, 1.0, PI / 2.0).abs() < 1e-15);
    assert!((secular_m2(2.0, 1.0, 1.0, 1.0, PI / 4.0) - 0.5).abs() < 1e-15);
}

#[test]
fn interval_eigenfunction_is_a_cosine() {
    let c = chain(&[(1.0, 1)]);
    let phi = c.eigenfunction(&c.spectral_gap()).unwrap();
    for i in 0..=10 {
        let x = i as f64 / 10.0;
        assert!((phi.value(x) - (PI * x).cos()).abs() < 1e-10);
    }
}

#[test]
fn two_pumpkin_eigenfunction_amplitudes() {
    // solving the matching system at σ = π/2 by hand: b₂ = −4b₁ with
    // φ = b₁cos(πx/2) on [0,1] and b₂cos(π(2−x)/2) on [1,2]
    let c = chain(&[(1.0, 4), (1.0, 1)]);
    let phi = c.eigenfunction(&c.spectral_gap()).unwrap();
    for x in [0.1, 0.5, 0.9] {
        assert!((phi.value(x) - (PI * x / 2.0).cos()).abs() < 1e-10);
    }
    for x in [1.1, 1.5, 1.9] {
        let expected = -4.0 * (PI * (2.0 - x) / 2.0).cos();
        assert!((phi.value(x) - expected).abs() < 1e-9);
    }
    assert!(c.weighted_mean(&phi).abs() < 1e-9);
    assert!(phi.continuity_defect() < 1e-10);
    assert!(c.flux_defect(&phi) < 1e-10);
}

#[test]
fn rayleigh_of_interval_cosine() {
    let c = chain(&[(0.7, 3), (0.8, 3)]);
    let phi = c.eigenfunction(&c.spectral_gap()).unwrap();
    let q = c.rayleigh_quotient(&phi).unwrap();
    assert!((q - (PI / 1.5).powi(2)).abs() < 1e-9);
}

#[test]
fn psi1_single_segment_and_symmetry() {
    let c = chain(&[(2.0, 7)]);
    let psi = c.test_function_psi1();
    let (b1, b2) = amplitudes(&psi);
    assert!((b1 - b2).abs() < 1e-14);
    let c = chain(&[(1.0, 1), (2.0, 5), (1.0, 1)]);
    let (b1, b2) = amplitudes(&c.test_function_psi1());
    assert!((b1 - b2).abs() < 1e-14);
}

fn amplitudes(psi: &qgap_core::PiecewiseTrig) -> (f64, f64) {
    let trig: Vec<f64> = psi
        .pieces()
        .iter()
        .filter_map(|p| match p.shape {
            PieceShape::Trig { amplitude, .. } => Some(amplitude),
            PieceShape::Plateau(_) => None,
        })
        .collect();
    (trig[0], trig[trig.len() - 1])
}

#[test]
fn psi1_orthogonality_by_quadrature() {
    let c = chain(&[(2.0, 1), (1.0, 1)]);
    let psi = c.test_function_psi1();
    let (b1, b2) = amplitudes(&psi);
    assert!((b1 * b1 + b2 * b2 - 1.0).abs() < 1e-14);
    assert!(quadrature_mean(&c, |x| psi.value(x)).abs() < 1e-8);
    assert!(c.weighted_mean(&psi).abs() < 1e-14);
}

#[test]
fn psi2_layouts() {
    let c = chain(&[(1.0, 1), (1.0, 1)]);
    let psi = c.test_function_psi2().unwrap();
    let (b1, b2) = amplitudes(&psi);
    assert!((b1 - b2).abs() < 1e-14);
    assert_eq!(psi.pieces().len(), 2);

    let c = chain(&[(2.0, 1), (1.0, 1)]);
    let psi = c.test_function_psi2().unwrap();
    let zero: Vec<_> = psi
        .pieces()
        .iter()
        .filter(|p| p.shape == PieceShape::Plateau(0.0))
        .collect();
    assert_eq!(zero.len(), 1);
    assert!((zero[0].start - 1.0).abs() < 1e-15 && (zero[0].end - 2.0).abs() < 1e-15);
    assert!(quadrature_mean(&c, |x| psi.value(x)).abs() < 1e-8);
    assert!(psi.continuity_defect() < 1e-12);
}

#[test]
fn sampled_rayleigh_converges() {
    let c = chain(&[(1.0, 2), (0.5, 9)]);
    let phi = c.eigenfunction(&c.spectral_gap()).unwrap();
    let exact = c.rayleigh_quotient(&phi).unwrap();
    let grid = qgap_core::chain::sample_grid(&c, 4001);
    let xs: Vec<f64> = grid.iter().map(|g| g.0).collect();
    let ys: Vec<f64> = xs.iter().map(|&x| phi.value(x)).collect();
    let q = c.rayleigh_quotient_sampled(&xs, &ys).unwrap();
    assert!(q >= exact - 1e-9);
    assert!((q - exact) / exact < 1e-5);
}

fn arb_chain(min_m: usize) -> impl Strategy<Value = PumpkinChain> {
    prop::collection::vec((0.1f64..3.0, 1u64..50), min_m..7)
        .prop_map(|pairs| PumpkinChain::from_pairs(&pairs).unwrap())
}

proptest! {
    #[test]
    fn prufer_angle_is_increasing(c in arb_chain(1), s in 0.01f64..20.0, ds in 1e-3f64..5.0) {
        prop_assert!(c.prufer_sweep(s + ds) > c.prufer_sweep(s));
    }

    #[test]
    fn gap_below_chain_bound(c in arb_chain(2)) {
        let m = c.len() as f64;
        let bound = ((m + 1.0) * PI / (2.0 * c.total_length())).powi(2);
        prop_assert!(c.spectral_gap().lambda <= bound * (1.0 + 1e-12));
    }

    #[test]
    fn gap_below_test_functions(c in arb_chain(2)) {
        let lambda = c.spectral_gap().lambda;
        let psi1 = c.test_function_psi1();
        let psi2 = c.test_function_psi2().unwrap();
        let q1 = c.rayleigh_quotient(&psi1).unwrap();
        let q2 = c.rayleigh_quotient(&psi2).unwrap();
        let (p, q) = c.longest_two();
        let l1 = c.segments()[p].length;
        let l2 = c.segments()[q.unwrap()].length;
        prop_assert!(c.weighted_mean(&psi1).abs() < 1e-9 * c.total_length() * 50.0);
        prop_assert!(lambda <= q1 * (1.0 + 1e-10));
        prop_assert!(lambda <= q2 * (1.0 + 1e-10));
        prop_assert!(q1 <= (PI / l1).powi(2) * (1.0 + 1e-12));
        prop_assert!(q2 <= (PI / (2.0 * l2)).powi(2) * (1.0 + 1e-12));
    }

    #[test]
    fn gap_below_random_trial_functions(c in arb_chain(1), amps in prop::collection::vec(-1.0f64..1.0, 7), freq in 0.1f64..10.0) {
        // a random cosine sum, sampled, with its weighted mean removed
        let l = c.total_length();
        let f = |x: f64| -> f64 {
            amps.iter().enumerate().map(|(k, a)| a * ((k as f64 + freq) * PI * x / l).cos()).sum()
        };
        let grid = qgap_core::chain::sample_grid(&c, 3000);
        let xs: Vec<f64> = grid.iter().map(|g| g.0).collect();
        let mut ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
        // remove the weighted mean of the piecewise-linear interpolant
        let mut mass = 0.0;
        let mut integral = 0.0;
        for i in 0..xs.len() - 1 {
            let mid = 0.5 * (xs[i] + xs[i + 1]);
            let k = c.multiplicity_f64(c.segment_at(mid).unwrap());
            let h = xs[i + 1] - xs[i];
            mass += k * h;
            integral += k * h * 0.5 * (ys[i] + ys[i + 1]);
        }
        let mean = integral / mass;
        for y in ys.iter_mut() {
            *y -= mean;
        }
        if let Ok(q) = c.rayleigh_quotient_sampled(&xs, &ys) {
            prop_assert!(c.spectral_gap().lambda <= q * (1.0 + 1e-9));
        }
    }

    #[test]
    fn scaling_covariance(c in arb_chain(1), s in 0.2f64..5.0, k in 2u64..1000) {
        let base = c.spectral_gap().lambda;
        let scaled = c.scaled(s).unwrap().spectral_gap().lambda;
        prop_assert!((scaled * s * s - base).abs() <= 1e-9 * base);
        let heavier = PumpkinChain::new(
            c.segments().iter().map(|seg| Segment::new(seg.length, &seg.multiplicity * k)).collect(),
        ).unwrap();
        prop_assert!((heavier.spectral_gap().lambda - base).abs() <= 1e-9 * base);
    }

    #[test]
    fn two_pumpkin_gap_matches_secular_root(l1 in 0.2f64..2.0, l2 in 0.2f64..2.0, k1 in 1u64..30, k2 in 1u64..30) {
        let c = chain(&[(l1, k1), (l2, k2)]);
        let sigma = c.eigenvalue(1, 1e-14).unwrap().sigma;
        let root = first_root(|s| matching_determinant_m2(k1 as f64, k2 as f64, l1, l2, s), 3.0 * PI / (l1 + l2));
        prop_assert!((root - sigma).abs() <= 1e-10 * sigma);
    }

    #[test]
    fn first_eigenfunction_changes_sign_once(c in arb_chain(1)) {
        let r = c.spectral_gap();
        let phi = c.eigenfunction(&r).unwrap();
        prop_assert_eq!(phi.zeros().len(), 1);
        prop_assert_eq!(phi.sign_changes(2000), 1);
        let scale: f64 = c.segments().iter().map(|s| c.multiplicity_f64(0).max(1.0) * s.length).sum::<f64>();
        prop_assert!(c.weighted_mean(&phi).abs() <= 1e-8 * scale.max(1.0) * phi.max_amplitude() * 50.0);
        prop_assert!(phi.continuity_defect() < 1e-10);
        prop_assert!(c.flux_defect(&phi) < 1e-10);
    }
}
