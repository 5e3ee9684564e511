//! Seeded random instances and the invariant suite behind `qgap verify`.
//!
//! Case `i` of a run with seed `s` draws from ChaCha8 seeded with `s` on
//! stream `i`, so cases are independent of each other and of the order in
//! which they run.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use qgap_core::bounds::{chain_upper, sharp_combinatorial_upper, sharp_diameter_upper};
use qgap_core::fem::lambda1_numeric;
use qgap_core::graph::Edge;
use qgap_core::reduction::{reduce, Mode};
use qgap_core::{MetricGraph, PumpkinChain, Segment};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Relative slack granted to finite-element values.
pub const FEM_SLACK: f64 = 1e-3;
/// Tolerance passed to the finite-element solver.
pub const FEM_TOL: f64 = 1e-5;

pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

#[derive(Debug, Clone, Copy)]
pub struct ChainShape {
    pub min_segments: usize,
    pub max_segments: usize,
    pub max_multiplicity: u64,
    pub min_length: f64,
    pub max_length: f64,
}

impl Default for ChainShape {
    fn default() -> Self {
        ChainShape {
            min_segments: 1,
            max_segments: 6,
            max_multiplicity: 20,
            min_length: 0.3,
            max_length: 2.0,
        }
    }
}

pub fn random_chain(rng: &mut impl Rng, shape: ChainShape) -> PumpkinChain {
    let m = rng.gen_range(shape.min_segments..=shape.max_segments);
    let segments = (0..m)
        .map(|_| {
            Segment::new(
                rng.gen_range(shape.min_length..=shape.max_length),
                rng.gen_range(1..=shape.max_multiplicity),
            )
        })
        .collect();
    PumpkinChain::new(segments).expect("lengths and multiplicities are positive")
}

/// A connected multigraph with 2 to 6 vertices and at most `max_edges`
/// edges: a random spanning tree plus extra edges, where loops and parallel
/// edges are allowed.
pub fn random_graph(rng: &mut impl Rng, max_edges: usize) -> MetricGraph {
    assert!(max_edges >= 1);
    let n = rng.gen_range(2..=6usize.min(max_edges + 1));
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push(Edge {
            name: format!("t{v}"),
            from: rng.gen_range(0..v),
            to: v,
            length: rng.gen_range(0.3..2.0),
        });
    }
    let extra = rng.gen_range(0..=max_edges - (n - 1));
    for k in 0..extra {
        edges.push(Edge {
            name: format!("x{k}"),
            from: rng.gen_range(0..n),
            to: rng.gen_range(0..n),
            length: rng.gen_range(0.3..2.0),
        });
    }
    MetricGraph::new((0..n).map(|i| format!("v{i}")).collect(), edges).expect("spanning tree keeps it connected")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Surgery {
    CutPendant { edge: String },
    Shorten { edge: String, length: f64 },
    Identify { a: String, b: String },
}

/// One of the three gap-raising surgeries, applied to a random place.
pub fn random_surgery(rng: &mut impl Rng, g: &MetricGraph) -> (Surgery, MetricGraph) {
    let pendants: Vec<usize> = (0..g.edge_count())
        .filter(|&e| {
            let edge = &g.edges()[e];
            !edge.is_loop() && (g.degree(edge.from) == 1 || g.degree(edge.to) == 1)
        })
        .collect();
    let choice = rng.gen_range(0..3);
    if choice == 0 && !pendants.is_empty() && g.edge_count() > 1 {
        let e = pendants[rng.gen_range(0..pendants.len())];
        let out = g.cut_pendant(&[e]).expect("a leaf edge is a pendant");
        return (
            Surgery::CutPendant {
                edge: g.edges()[e].name.clone(),
            },
            out,
        );
    }
    if choice == 2 && g.vertex_count() >= 2 {
        let a = rng.gen_range(0..g.vertex_count());
        let mut b = rng.gen_range(0..g.vertex_count() - 1);
        if b >= a {
            b += 1;
        }
        let out = g.identify_vertices(a, b).expect("distinct vertices");
        return (
            Surgery::Identify {
                a: g.vertices()[a].clone(),
                b: g.vertices()[b].clone(),
            },
            out,
        );
    }
    let e = rng.gen_range(0..g.edge_count());
    let length = g.edges()[e].length * rng.gen_range(0.2..0.95);
    let out = g.shorten_edge(e, length).expect("shorter positive length");
    (
        Surgery::Shorten {
            edge: g.edges()[e].name.clone(),
            length,
        },
        out,
    )
}

pub type Check = Result<(), String>;

fn fem(g: &MetricGraph) -> Result<f64, String> {
    lambda1_numeric(g, FEM_TOL).map(|r| r.value).map_err(|e| format!("finite elements: {e}"))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Chain solver against the finite-element oracle on the expanded graph.
pub fn check_chain_vs_fem(chain: &PumpkinChain) -> Check {
    let exact = chain.spectral_gap().lambda;
    let g = chain.to_metric_graph(10_000).map_err(|e| e.to_string())?;
    let numeric = fem(&g)?;
    let r = rel(numeric, exact);
    if r <= FEM_SLACK {
        Ok(())
    } else {
        Err(format!("chain {exact} vs finite elements {numeric} (relative {r:e})"))
    }
}

/// `λ₁ ≤ ((m+1)π/(2ℓ))²` for chains with at least two pumpkins.
pub fn check_chain_bound(chain: &PumpkinChain) -> Check {
    let Some(bound) = chain_upper(chain.len(), chain.total_length()) else {
        return Ok(());
    };
    let lambda = chain.spectral_gap().lambda;
    if lambda <= bound * (1.0 + 1e-12) {
        Ok(())
    } else {
        Err(format!("λ₁ = {lambda} above chain bound {bound}"))
    }
}

/// Rayleigh quotients of the two trial functions against their closed-form
/// ceilings, and `λ₁` below both quotients.
pub fn check_test_functions(chain: &PumpkinChain) -> Check {
    let lambda = chain.spectral_gap().lambda;
    let (first, second) = chain.longest_two();
    let l1 = chain.segments()[first].length;
    let r1 = chain
        .rayleigh_quotient(&chain.test_function_psi1())
        .map_err(|e| e.to_string())?;
    let slack = 1.0 + 1e-12;
    if r1 > (PI / l1).powi(2) * slack {
        return Err(format!("R(ψ₁) = {r1} above (π/ℓ₁)² = {}", (PI / l1).powi(2)));
    }
    if lambda > r1 * slack {
        return Err(format!("λ₁ = {lambda} above R(ψ₁) = {r1}"));
    }
    if let Some(second) = second {
        let l2 = chain.segments()[second].length;
        let psi2 = chain.test_function_psi2().map_err(|e| e.to_string())?;
        let r2 = chain.rayleigh_quotient(&psi2).map_err(|e| e.to_string())?;
        let cap = (PI / (2.0 * l2)).powi(2);
        if r2 > cap * slack {
            return Err(format!("R(ψ₂) = {r2} above (π/(2ℓ₂))² = {cap}"));
        }
        if lambda > r2 * slack {
            return Err(format!("λ₁ = {lambda} above R(ψ₂) = {r2}"));
        }
    }
    Ok(())
}

/// Both diameter bounds against the finite-element value.
pub fn check_diameter_bounds(g: &MetricGraph) -> Check {
    let lambda = fem(g)?;
    let n_v = g.vertex_count();
    let ceiling = lambda * (1.0 - FEM_SLACK);
    if let Some(b) = sharp_diameter_upper(n_v, g.diameter().value) {
        if ceiling > b {
            return Err(format!("λ₁ = {lambda} above diameter bound {b}"));
        }
    }
    if let Ok((d, _, _)) = g.combinatorial_diameter() {
        if let Some(b) = sharp_combinatorial_upper(n_v, d) {
            if ceiling > b {
                return Err(format!("λ₁ = {lambda} above combinatorial bound {b}"));
            }
        }
    }
    Ok(())
}

pub fn check_surgery(before: &MetricGraph, surgery: &Surgery, after: &MetricGraph) -> Check {
    let b = fem(before)?;
    let a = fem(after)?;
    if a >= b * (1.0 - FEM_SLACK) {
        Ok(())
    } else {
        Err(format!("{surgery:?} lowered λ₁ from {b} to {a}"))
    }
}

/// Diameter preservation, vertex-count bookkeeping and gap monotonicity of
/// the reduction in both modes.
pub fn check_reduction(g: &MetricGraph) -> Check {
    let before = fem(g)?;
    for mode in [Mode::Metric, Mode::Combinatorial] {
        let (chain, _) = reduce(g, mode).map_err(|e| format!("{mode:?}: {e}"))?;
        let d = match mode {
            Mode::Metric => g.diameter().value,
            Mode::Combinatorial => g.combinatorial_diameter().map_err(|e| e.to_string())?.0,
        };
        if (chain.total_length() - d).abs() > 1e-12 * d {
            return Err(format!("{mode:?}: chain length {} differs from diameter {d}", chain.total_length()));
        }
        let n_star = chain.len() + 1;
        let allowed = match mode {
            Mode::Metric => g.vertex_count() + 2,
            Mode::Combinatorial => g.vertex_count(),
        };
        if n_star > allowed {
            return Err(format!("{mode:?}: chain has {n_star} vertices, at most {allowed} allowed"));
        }
        let after = chain.spectral_gap().lambda;
        if after < before * (1.0 - FEM_SLACK) {
            return Err(format!("{mode:?}: λ₁ dropped from {before} to {after}"));
        }
    }
    Ok(())
}

pub const CHECKS: [&str; 6] = [
    "chain-vs-fem",
    "chain-bound",
    "test-functions",
    "diameter-bounds",
    "surgery",
    "reduction",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub case: u64,
    pub check: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckTally {
    pub check: &'static str,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub seed: u64,
    pub count: u64,
    pub checks: Vec<CheckTally>,
    pub failures: Vec<Failure>,
}

impl Summary {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs every check on one random chain (at least two pumpkins) and one
/// random graph with at most eight edges.
pub fn run_case(seed: u64, case: u64) -> Vec<(&'static str, Check)> {
    let mut rng = case_rng(seed, case);
    let chain = random_chain(
        &mut rng,
        ChainShape {
            min_segments: 2,
            ..ChainShape::default()
        },
    );
    let g = random_graph(&mut rng, 8);
    let (surgery, after) = random_surgery(&mut rng, &g);
    vec![
        ("chain-vs-fem", check_chain_vs_fem(&chain)),
        ("chain-bound", check_chain_bound(&chain)),
        ("test-functions", check_test_functions(&chain)),
        ("diameter-bounds", check_diameter_bounds(&g)),
        ("surgery", check_surgery(&g, &surgery, &after)),
        ("reduction", check_reduction(&g)),
    ]
}

/// Runs `count` cases on all available cores and aggregates the results in
/// case order.
pub fn run_suite(seed: u64, count: u64) -> Summary {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(count.max(1) as usize);
    let mut results: Vec<(u64, Vec<(&'static str, Check)>)> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers as u64)
            .map(|w| {
                s.spawn(move || {
                    (w..count)
                        .step_by(workers)
                        .map(|case| (case, run_case(seed, case)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    results.sort_by_key(|r| r.0);
    let mut tallies: BTreeMap<&'static str, (usize, usize)> = CHECKS.iter().map(|&c| (c, (0, 0))).collect();
    let mut failures = Vec::new();
    for (case, checks) in results {
        for (check, outcome) in checks {
            let t = tallies.get_mut(check).expect("known check");
            match outcome {
                Ok(()) => t.0 += 1,
                Err(detail) => {
                    t.1 += 1;
                    failures.push(Failure { case, check, detail });
                }
            }
        }
    }
    Summary {
        seed,
        count,
        checks: CHECKS
            .iter()
            .map(|&check| {
                let (passed, failed) = tallies[check];
                CheckTally { check, passed, failed }
            })
            .collect(),
        failures,
    }
}
