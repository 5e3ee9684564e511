//! The subcommands as library functions returning serializable reports.

use std::f64::consts::PI;

use qgap_core::bounds::{bound_report, BoundReport, FriedlanderConvention};
use qgap_core::chain::{sample_grid, DEFAULT_TOL};
use qgap_core::extremal::{build_chain, build_spec, verify, ExtremalReport, ExtremalSpec};
use qgap_core::fem::{lambda1_numeric, lambda1_numeric_from};
use qgap_core::reduction::{reduce, Mode, ReductionTrace};
use qgap_core::{MetricGraph, PiecewiseTrig, PumpkinChain};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formats::{mode_name, ChainFile, Decimal, Input};
use crate::harness::{self, Summary};
use crate::render::{fields, num, opt, Table};

/// Default relative tolerance for the finite-element solver.
pub const FEM_DEFAULT_TOL: f64 = 1e-6;

pub fn check_tol(tol: f64) -> Result<f64> {
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(Error::Usage(format!("tolerance must be positive, got {tol}")))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EigReport {
    /// `chain` or `fem`.
    pub method: &'static str,
    pub index: usize,
    pub lambda: f64,
    pub sigma: f64,
    pub sigma_over_pi: f64,
    /// Bisection bracket on `σ` for chains, extrapolation error for graphs.
    pub error_estimate: f64,
    /// Initial mesh size for graphs.
    pub mesh: Option<f64>,
}

impl EigReport {
    pub fn table(&self) -> Table {
        fields(&[
            ("method", self.method.to_string()),
            ("index", self.index.to_string()),
            ("lambda", num(self.lambda)),
            ("sigma", num(self.sigma)),
            ("sigma/pi", num(self.sigma_over_pi)),
            ("error_estimate", num(self.error_estimate)),
            ("mesh", opt(self.mesh)),
        ])
    }
}

pub fn eig(input: &Input, tol: Option<f64>, mesh: Option<f64>, index: usize) -> Result<EigReport> {
    match input {
        Input::Chain(c) => {
            let r = c.eigenvalue(index, check_tol(tol.unwrap_or(DEFAULT_TOL))?)?;
            Ok(EigReport {
                method: "chain",
                index,
                lambda: r.lambda,
                sigma: r.sigma,
                sigma_over_pi: r.sigma / PI,
                error_estimate: r.bracket_width,
                mesh: None,
            })
        }
        Input::Graph(g) => {
            if index != 1 {
                return Err(Error::Usage("graphs support only --index 1".into()));
            }
            let tol = check_tol(tol.unwrap_or(FEM_DEFAULT_TOL))?;
            let h = mesh.unwrap_or(g.min_edge_length() / 16.0);
            let r = lambda1_numeric_from(g, h, tol)?;
            let sigma = r.value.max(0.0).sqrt();
            Ok(EigReport {
                method: "fem",
                index,
                lambda: r.value,
                sigma,
                sigma_over_pi: sigma / PI,
                error_estimate: r.error_estimate,
                mesh: Some(h),
            })
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReduceReport {
    pub mode: &'static str,
    pub endpoints: [String; 2],
    pub distance: f64,
    pub input_vertices: usize,
    pub chain_vertices: usize,
    pub paths: usize,
    pub fallback: Option<String>,
    pub chain: ChainFile,
}

impl ReduceReport {
    pub fn table(&self) -> Table {
        let mut t = fields(&[
            ("mode", self.mode.to_string()),
            ("endpoints", format!("{} {}", self.endpoints[0], self.endpoints[1])),
            ("distance", num(self.distance)),
            ("input_vertices", self.input_vertices.to_string()),
            ("chain_vertices", self.chain_vertices.to_string()),
            ("paths", self.paths.to_string()),
            ("fallback", self.fallback.clone().unwrap_or_else(|| "-".into())),
        ]);
        for (j, s) in self.chain.segments.iter().enumerate() {
            t.push(vec![
                format!("segment {}", j + 1),
                format!("length {} multiplicity {}", num(s.length), s.multiplicity.0),
            ]);
        }
        t
    }
}

pub fn reduce_graph(g: &MetricGraph, mode: Mode) -> Result<(ReduceReport, ReductionTrace)> {
    let (chain, trace) = reduce(g, mode)?;
    let report = ReduceReport {
        mode: mode_name(mode),
        endpoints: [trace.endpoints.0.clone(), trace.endpoints.1.clone()],
        distance: trace.distance,
        input_vertices: trace.input_vertex_count,
        chain_vertices: chain.len() + 1,
        paths: trace.paths.len(),
        fallback: trace.fallback.as_ref().map(|e| e.to_string()),
        chain: ChainFile::from_chain(&chain),
    };
    Ok((report, trace))
}

#[derive(Debug, Clone, Serialize)]
pub struct StatsRecord {
    pub n_v: usize,
    pub n_e: usize,
    pub total_length: f64,
    pub diam: f64,
    pub diam_v: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundRecord {
    pub name: &'static str,
    pub side: &'static str,
    pub applicable: bool,
    pub value: Option<f64>,
    pub margin: Option<f64>,
    pub violated: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsOutput {
    pub stats: StatsRecord,
    pub lambda1: Option<f64>,
    pub friedlander_convention: &'static str,
    pub consistent: bool,
    pub bounds: Vec<BoundRecord>,
}

impl BoundsOutput {
    fn from_report(r: &BoundReport, convention: FriedlanderConvention) -> Self {
        BoundsOutput {
            stats: StatsRecord {
                n_v: r.stats.n_v,
                n_e: r.stats.n_e,
                total_length: r.stats.total_length,
                diam: r.stats.diam,
                diam_v: r.stats.diam_v,
            },
            lambda1: r.lambda1,
            friedlander_convention: match convention {
                FriedlanderConvention::AsPrinted => "as-printed",
                FriedlanderConvention::Shifted => "shifted",
            },
            consistent: r.is_consistent(),
            bounds: r
                .entries
                .iter()
                .map(|e| BoundRecord {
                    name: e.kind.name(),
                    side: match e.kind.side() {
                        qgap_core::bounds::Side::Lower => "lower",
                        qgap_core::bounds::Side::Upper => "upper",
                    },
                    applicable: e.applicable(),
                    value: e.value,
                    margin: e.margin,
                    violated: e.violated,
                })
                .collect(),
        }
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new(&["bound", "side", "value", "margin", "violated"]);
        for b in &self.bounds {
            t.push(vec![
                b.name.to_string(),
                b.side.to_string(),
                opt(b.value),
                opt(b.margin),
                if b.violated { "yes" } else { "no" }.to_string(),
            ]);
        }
        t.push(vec!["lambda1".into(), "-".into(), opt(self.lambda1), "-".into(), "-".into()]);
        t
    }
}

/// Bounds for a graph, with `λ₁` from finite elements unless `with_lambda` is
/// false.
pub fn bounds(
    g: &MetricGraph,
    with_lambda: bool,
    tol: Option<f64>,
    mesh: Option<f64>,
    convention: FriedlanderConvention,
) -> Result<BoundsOutput> {
    let lambda = if with_lambda {
        let tol = check_tol(tol.unwrap_or(FEM_DEFAULT_TOL))?;
        let r = match mesh {
            Some(h) => lambda1_numeric_from(g, h, tol)?,
            None => lambda1_numeric(g, tol)?,
        };
        Some(r.value)
    } else {
        None
    };
    Ok(BoundsOutput::from_report(&bound_report(g, lambda, convention), convention))
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecRecord {
    pub m: usize,
    pub j0: usize,
    pub n: u64,
    pub a: f64,
    /// Exact values as `p/q`.
    pub sin_theta: String,
    pub cos_theta: String,
    pub theta: f64,
    pub delta: f64,
    pub sigma1: f64,
    pub total_length: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtremalOutput {
    pub spec: SpecRecord,
    pub multiplicities: Vec<Decimal>,
    pub chain: ChainFile,
    pub target_lambda: f64,
    pub limit_lambda: f64,
    pub solver_lambda: f64,
    pub solver_sigma_over_pi: f64,
    pub relative_difference: f64,
    pub index_one: bool,
    pub residuals_exactly_zero: bool,
    pub eigenfunction_zeros: Vec<f64>,
    pub double_segment_midpoint: f64,
}

impl ExtremalOutput {
    fn new(spec: &ExtremalSpec, chain: &PumpkinChain, r: ExtremalReport) -> Self {
        ExtremalOutput {
            spec: SpecRecord {
                m: spec.m,
                j0: spec.j0,
                n: spec.n,
                a: spec.a,
                sin_theta: spec.sin_theta.to_string(),
                cos_theta: spec.cos_theta.to_string(),
                theta: spec.theta,
                delta: spec.delta,
                sigma1: spec.sigma1,
                total_length: spec.total_length,
            },
            multiplicities: r.multiplicities.into_iter().map(Decimal).collect(),
            chain: ChainFile::from_chain(chain),
            target_lambda: r.target_lambda,
            limit_lambda: spec.limit_lambda(),
            solver_lambda: r.solver_lambda,
            solver_sigma_over_pi: r.solver_lambda.sqrt() / PI,
            relative_difference: r.relative_difference,
            index_one: r.index_one,
            residuals_exactly_zero: r.residuals_exactly_zero,
            eigenfunction_zeros: r.zeros,
            double_segment_midpoint: r.double_segment_midpoint,
        }
    }

    /// Verification passed: exact matching and the solver agreeing with the
    /// construction.
    pub fn verified(&self, rel_tol: f64) -> bool {
        self.residuals_exactly_zero && self.index_one && self.relative_difference <= rel_tol
    }

    pub fn table(&self) -> Table {
        let s = &self.spec;
        let mut t = fields(&[
            ("m", s.m.to_string()),
            ("j0", s.j0.to_string()),
            ("n", s.n.to_string()),
            ("a", num(s.a)),
            ("sin_theta", s.sin_theta.clone()),
            ("cos_theta", s.cos_theta.clone()),
            ("delta", num(s.delta)),
            ("target_lambda", num(self.target_lambda)),
            ("solver_lambda", num(self.solver_lambda)),
            ("sigma/pi", num(self.solver_sigma_over_pi)),
            ("relative_difference", num(self.relative_difference)),
            ("limit_lambda", num(self.limit_lambda)),
            ("index_one", self.index_one.to_string()),
            ("residuals_exactly_zero", self.residuals_exactly_zero.to_string()),
        ]);
        for (j, k) in self.multiplicities.iter().enumerate() {
            t.push(vec![format!("k{}", j + 1), k.0.to_string()]);
        }
        t
    }
}

pub fn extremal(m: usize, j0: usize, n: u64, a: f64, tol: f64) -> Result<ExtremalOutput> {
    let tol = check_tol(tol)?;
    let spec = build_spec(m, j0, n, a)?;
    let chain = build_chain(&spec)?;
    let report = verify(&spec, tol)?;
    Ok(ExtremalOutput::new(&spec, &chain, report))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TestFunction {
    Psi1,
    Psi2,
}

#[derive(Debug, Clone, Serialize)]
pub struct Sample {
    pub x: f64,
    pub value: f64,
    pub segment_index: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Samples {
    /// `eigenfunction`, `psi1` or `psi2`.
    pub function: &'static str,
    pub sigma: f64,
    pub lambda: Option<f64>,
    pub rayleigh_quotient: Option<f64>,
    pub samples: Vec<Sample>,
}

impl Samples {
    pub fn table(&self) -> Table {
        let mut t = Table::new(&["x", "value", "segment_index"]);
        for s in &self.samples {
            t.push(vec![num(s.x), num(s.value), s.segment_index.to_string()]);
        }
        t
    }
}

/// Samples an eigenfunction (or a trial function) on a uniform grid with the
/// interfaces added. Segment indices are 1-based.
pub fn eigenfunction(
    chain: &PumpkinChain,
    index: usize,
    samples: usize,
    test_function: Option<TestFunction>,
    tol: Option<f64>,
) -> Result<Samples> {
    if samples < 2 {
        return Err(Error::Usage("at least two samples are needed".into()));
    }
    let (name, f, lambda): (&'static str, PiecewiseTrig, Option<f64>) = match test_function {
        None => {
            let r = chain.eigenvalue(index, check_tol(tol.unwrap_or(DEFAULT_TOL))?)?;
            ("eigenfunction", chain.eigenfunction(&r)?, Some(r.lambda))
        }
        Some(TestFunction::Psi1) => ("psi1", chain.test_function_psi1(), None),
        Some(TestFunction::Psi2) => ("psi2", chain.test_function_psi2()?, None),
    };
    let rayleigh = if test_function.is_some() {
        Some(chain.rayleigh_quotient(&f)?)
    } else {
        None
    };
    Ok(Samples {
        function: name,
        sigma: f.frequency(),
        lambda,
        rayleigh_quotient: rayleigh,
        samples: sample_grid(chain, samples)
            .into_iter()
            .map(|(x, seg)| Sample {
                x,
                value: f.value(x),
                segment_index: seg + 1,
            })
            .collect(),
    })
}

pub fn verify_suite(seed: u64, count: u64) -> Result<Summary> {
    if count == 0 {
        return Err(Error::Usage("--count must be at least 1".into()));
    }
    Ok(harness::run_suite(seed, count))
}

pub fn summary_table(s: &Summary) -> Table {
    let mut t = Table::new(&["check", "passed", "failed"]);
    for c in &s.checks {
        t.push(vec![c.check.to_string(), c.passed.to_string(), c.failed.to_string()]);
    }
    t
}
