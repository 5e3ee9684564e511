//! Finite-element oracle for the spectral gap of an arbitrary compact
//! quantum graph.
//!
//! Every edge is cut into equal linear elements and the vertex nodes are
//! shared between all incident edges. Continuity at vertices is therefore
//! built into the trial space and the Kirchhoff condition comes out as the
//! natural boundary condition of the quadratic form `‖f′‖²`.
//!
//! The smallest nonzero eigenvalue of the pencil (stiffness, mass) is found
//! by Lanczos iteration on the shift-inverted operator `(K + μM)⁻¹M`, with
//! the constant mode projected out in the mass inner product. The linear
//! solves condense every edge's interior nodes (a tridiagonal block) onto
//! the vertex nodes, leaving a small dense system.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
#[allow(unused_imports)]
use num_traits::Float;

use crate::graph::{MetricGraph, VertexId};
use crate::linalg::{cholesky, cholesky_solve, splitmix_unit, tridiagonal_eigen, TridiagonalLdl};

#[derive(Debug, Clone, PartialEq)]
pub enum FemError {
    /// The mesh size must be positive and below the shortest edge length.
    MeshTooCoarse { h: f64, min_edge: f64 },
    /// The refinement budget ran out before the error estimate reached the
    /// requested tolerance.
    NotConverged { value: f64, error_estimate: f64 },
    /// The eigen-iteration stalled.
    IterationFailed { residual: f64 },
    Singular,
}

impl fmt::Display for FemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FemError::MeshTooCoarse { h, min_edge } => {
                write!(f, "mesh size {h} must lie in (0, {min_edge})")
            }
            FemError::NotConverged {
                value,
                error_estimate,
            } => write!(
                f,
                "error estimate {error_estimate:e} above tolerance (best value {value})"
            ),
            FemError::IterationFailed { residual } => {
                write!(f, "eigen-iteration did not converge (residual {residual:e})")
            }
            FemError::Singular => write!(f, "shifted operator is not positive definite"),
        }
    }
}

impl core::error::Error for FemError {}

/// Element layout of one edge.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeMesh {
    pub from: VertexId,
    pub to: VertexId,
    pub elements: usize,
    /// Element length.
    pub h: f64,
    /// Global index of the first interior node; interior nodes are
    /// consecutive.
    pub first_interior: usize,
}

impl EdgeMesh {
    fn interior(&self) -> usize {
        self.elements - 1
    }

    /// Global node of local position `k` in `0..=elements`.
    fn node(&self, k: usize) -> usize {
        if k == 0 {
            self.from
        } else if k == self.elements {
            self.to
        } else {
            self.first_interior + k - 1
        }
    }
}

/// Conforming P1 discretization of the forms `‖f′‖²` (stiffness) and `‖f‖²`
/// (mass). Nodes `0..vertex_count` are the graph vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedForms {
    vertex_count: usize,
    edges: Vec<EdgeMesh>,
    nodes: usize,
    h: f64,
}

/// Subdivides each edge into `⌈length / h⌉` equal elements.
pub fn discretize(g: &MetricGraph, h: f64) -> Result<DiscretizedForms, FemError> {
    let min_edge = g.min_edge_length();
    if !(h > 0.0 && h < min_edge) {
        return Err(FemError::MeshTooCoarse { h, min_edge });
    }
    let counts: Vec<usize> = g
        .edges()
        .iter()
        .map(|e| ((e.length / h).ceil() as usize).max(2))
        .collect();
    Ok(DiscretizedForms::with_counts(g, &counts, h))
}

impl DiscretizedForms {
    fn with_counts(g: &MetricGraph, counts: &[usize], h: f64) -> Self {
        let vertex_count = g.vertex_count();
        let mut next = vertex_count;
        let edges = g
            .edges()
            .iter()
            .zip(counts)
            .map(|(e, &n)| {
                let m = EdgeMesh {
                    from: e.from,
                    to: e.to,
                    elements: n,
                    h: e.length / n as f64,
                    first_interior: next,
                };
                next += n - 1;
                m
            })
            .collect();
        DiscretizedForms {
            vertex_count,
            edges,
            nodes: next,
            h,
        }
    }

    /// The nested mesh with every element halved.
    pub fn refined(&self) -> DiscretizedForms {
        let mut next = self.vertex_count;
        let edges = self
            .edges
            .iter()
            .map(|m| {
                let r = EdgeMesh {
                    from: m.from,
                    to: m.to,
                    elements: 2 * m.elements,
                    h: m.h / 2.0,
                    first_interior: next,
                };
                next += r.elements - 1;
                r
            })
            .collect();
        DiscretizedForms {
            vertex_count: self.vertex_count,
            edges,
            nodes: next,
            h: self.h / 2.0,
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn mesh_size(&self) -> f64 {
        self.h
    }

    pub fn edge_meshes(&self) -> &[EdgeMesh] {
        &self.edges
    }

    /// Global node indices along an edge, `from` end first.
    pub fn edge_nodes(&self, edge: usize) -> Vec<usize> {
        let m = &self.edges[edge];
        (0..=m.elements).map(|k| m.node(k)).collect()
    }

    /// Entries `(row, col, value)` of the stiffness form, one 2×2 block per
    /// element; duplicates are meant to be summed.
    pub fn stiffness_triplets(&self) -> Vec<(usize, usize, f64)> {
        self.triplets(|h| [1.0 / h, -1.0 / h])
    }

    pub fn mass_triplets(&self) -> Vec<(usize, usize, f64)> {
        self.triplets(|h| [h / 3.0, h / 6.0])
    }

    fn triplets(&self, block: impl Fn(f64) -> [f64; 2]) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for m in &self.edges {
            let [dg, off] = block(m.h);
            for k in 0..m.elements {
                let (a, b) = (m.node(k), m.node(k + 1));
                out.extend([(a, a, dg), (b, b, dg), (a, b, off), (b, a, off)]);
            }
        }
        out
    }

    fn apply(&self, x: &[f64], y: &mut [f64], block: impl Fn(f64) -> [f64; 2]) {
        y.iter_mut().for_each(|v| *v = 0.0);
        for m in &self.edges {
            let [dg, off] = block(m.h);
            let mut prev = m.node(0);
            for k in 1..=m.elements {
                let cur = m.node(k);
                y[prev] += dg * x[prev] + off * x[cur];
                y[cur] += dg * x[cur] + off * x[prev];
                prev = cur;
            }
        }
    }

    pub fn apply_stiffness(&self, x: &[f64], y: &mut [f64]) {
        self.apply(x, y, |h| [1.0 / h, -1.0 / h]);
    }

    pub fn apply_mass(&self, x: &[f64], y: &mut [f64]) {
        self.apply(x, y, |h| [h / 3.0, h / 6.0]);
    }
}

/// Factorization of `K + μM` by static condensation onto the vertices.
struct ShiftedSolver<'a> {
    forms: &'a DiscretizedForms,
    /// per edge: tridiagonal factor of the interior block, coupling value,
    /// and the interior responses to unit loads at both ends
    blocks: Vec<EdgeBlock>,
    schur: Vec<f64>,
}

struct EdgeBlock {
    ldl: TridiagonalLdl,
    coupling: f64,
    from_response: Vec<f64>,
    to_response: Vec<f64>,
}

impl<'a> ShiftedSolver<'a> {
    fn new(forms: &'a DiscretizedForms, mu: f64) -> Result<Self, FemError> {
        let nv = forms.vertex_count;
        let mut schur = vec![0.0; nv * nv];
        let mut blocks = Vec::with_capacity(forms.edges.len());
        for m in &forms.edges {
            let h = m.h;
            let end_diag = 1.0 / h + mu * h / 3.0;
            let coupling = -1.0 / h + mu * h / 6.0;
            schur[m.from * nv + m.from] += end_diag;
            schur[m.to * nv + m.to] += end_diag;
            let ni = m.interior();
            let diag = vec![2.0 * end_diag; ni];
            let off = vec![coupling; ni.saturating_sub(1)];
            let ldl = TridiagonalLdl::factor(&diag, &off).ok_or(FemError::Singular)?;
            let mut from_response = vec![0.0; ni];
            from_response[0] = 1.0;
            ldl.solve_in_place(&mut from_response);
            let mut to_response = vec![0.0; ni];
            to_response[ni - 1] = 1.0;
            ldl.solve_in_place(&mut to_response);
            let c2 = coupling * coupling;
            schur[m.from * nv + m.from] -= c2 * from_response[0];
            schur[m.to * nv + m.to] -= c2 * to_response[ni - 1];
            schur[m.from * nv + m.to] -= c2 * to_response[0];
            schur[m.to * nv + m.from] -= c2 * from_response[ni - 1];
            blocks.push(EdgeBlock {
                ldl,
                coupling,
                from_response,
                to_response,
            });
        }
        cholesky(&mut schur, nv).ok_or(FemError::Singular)?;
        Ok(ShiftedSolver {
            forms,
            blocks,
            schur,
        })
    }

    /// Overwrites `b` with `(K + μM)⁻¹ b`.
    fn solve(&self, b: &mut [f64]) {
        let nv = self.forms.vertex_count;
        for (m, blk) in self.forms.edges.iter().zip(&self.blocks) {
            let r = m.first_interior..m.first_interior + m.interior();
            let y = &mut b[r];
            blk.ldl.solve_in_place(y);
            let (first, last) = (y[0], y[y.len() - 1]);
            b[m.from] -= blk.coupling * first;
            b[m.to] -= blk.coupling * last;
        }
        cholesky_solve(&self.schur, nv, &mut b[..nv]);
        for (m, blk) in self.forms.edges.iter().zip(&self.blocks) {
            let (xu, xv) = (b[m.from], b[m.to]);
            let c = blk.coupling;
            let y = &mut b[m.first_interior..m.first_interior + m.interior()];
            for (k, v) in y.iter_mut().enumerate() {
                *v -= c * (xu * blk.from_response[k] + xv * blk.to_response[k]);
            }
        }
    }
}

/// A discrete eigenpair of the (stiffness, mass) pencil.
#[derive(Debug, Clone)]
pub struct Eigenpair {
    pub value: f64,
    /// Mass-normalized, mass-orthogonal to constants.
    pub vector: Vec<f64>,
    /// `‖Kv − λMv‖ / (λ‖Mv‖)`
    pub residual: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    y.iter_mut().zip(x).for_each(|(yi, xi)| *yi += alpha * xi);
}

/// Smallest nonzero eigenvalue of the discretized forms.
pub fn smallest_nonzero_eigenpair(forms: &DiscretizedForms, mu: f64) -> Result<Eigenpair, FemError> {
    let n = forms.nodes;
    let solver = ShiftedSolver::new(forms, mu)?;
    let ones = vec![1.0; n];
    let mut m_ones = vec![0.0; n];
    forms.apply_mass(&ones, &mut m_ones);
    let ones_norm2 = dot(&ones, &m_ones);
    let deflate = |x: &mut [f64]| {
        let c = dot(x, &m_ones) / ones_norm2;
        x.iter_mut().for_each(|v| *v -= c);
    };

    let mut seed = 0x5eed_u64;
    let mut start: Vec<f64> = (0..n).map(|_| splitmix_unit(&mut seed)).collect();
    let max_basis = (n - 1).clamp(1, 120);
    let mut scratch = vec![0.0; n];
    let mut last_residual = f64::INFINITY;

    for _restart in 0..40 {
        deflate(&mut start);
        forms.apply_mass(&start, &mut scratch);
        let norm = dot(&start, &scratch).sqrt();
        if !(norm > 0.0) {
            return Err(FemError::IterationFailed { residual: f64::NAN });
        }
        let mut basis: Vec<Vec<f64>> = vec![start.iter().map(|v| v / norm).collect()];
        let mut m_basis: Vec<Vec<f64>> = vec![scratch.iter().map(|v| v / norm).collect()];
        let mut alpha: Vec<f64> = Vec::new();
        let mut beta: Vec<f64> = Vec::new();
        let mut ritz: Option<(f64, Vec<f64>)> = None;

        for j in 0..max_basis {
            let mut w = m_basis[j].clone();
            solver.solve(&mut w);
            deflate(&mut w);
            let a = dot(&w, &m_basis[j]);
            alpha.push(a);
            // full reorthogonalization, twice
            for _ in 0..2 {
                for (q, mq) in basis.iter().zip(&m_basis) {
                    let c = dot(&w, mq);
                    axpy(-c, q, &mut w);
                }
            }
            forms.apply_mass(&w, &mut scratch);
            let b = dot(&w, &scratch).max(0.0).sqrt();
            let done = b <= 1e-14 * a.abs() || j + 1 == max_basis;
            if done || (j + 1) % 8 == 0 {
                let (theta, y) = top_ritz(&alpha, &beta)?;
                let estimate = b * y[y.len() - 1].abs();
                last_residual = estimate / theta;
                let converged = estimate <= 1e-11 * theta || b <= 1e-14 * a.abs();
                if converged || done {
                    let mut v = vec![0.0; n];
                    for (yi, q) in y.iter().zip(&basis) {
                        axpy(*yi, q, &mut v);
                    }
                    ritz = Some((theta, v));
                    if converged {
                        break;
                    }
                }
            }
            if done {
                break;
            }
            beta.push(b);
            m_basis.push(scratch.iter().map(|v| v / b).collect());
            basis.push(w.iter().map(|v| v / b).collect());
        }

        let (theta, mut v) = ritz.ok_or(FemError::IterationFailed {
            residual: last_residual,
        })?;
        deflate(&mut v);
        forms.apply_mass(&v, &mut scratch);
        let norm = dot(&v, &scratch).sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
        let lambda = 1.0 / theta - mu;
        let mut kv = vec![0.0; n];
        forms.apply_stiffness(&v, &mut kv);
        forms.apply_mass(&v, &mut scratch);
        let num: f64 = kv
            .iter()
            .zip(&scratch)
            .map(|(k, m)| (k - lambda * m) * (k - lambda * m))
            .sum::<f64>()
            .sqrt();
        let den = lambda * dot(&scratch, &scratch).sqrt();
        let residual = num / den;
        if residual < 1e-6 || last_residual <= 1e-11 {
            return Ok(Eigenpair {
                value: lambda,
                vector: v,
                residual,
            });
        }
        start = v;
    }
    Err(FemError::IterationFailed {
        residual: last_residual,
    })
}

/// Largest eigenvalue of the Lanczos tridiagonal and its eigenvector.
fn top_ritz(alpha: &[f64], beta: &[f64]) -> Result<(f64, Vec<f64>), FemError> {
    let k = alpha.len();
    let mut d = alpha.to_vec();
    let mut e = beta[..k - 1].to_vec();
    e.push(0.0);
    let z = tridiagonal_eigen(&mut d, &mut e).ok_or(FemError::IterationFailed {
        residual: f64::NAN,
    })?;
    let top = (0..k)
        .max_by(|&a, &b| d[a].total_cmp(&d[b]))
        .unwrap_or(0);
    Ok((d[top], (0..k).map(|r| z[r * k + top]).collect()))
}

/// Default shift: a known lower bound for λ₁, `(π/ℓ(G))²`.
fn default_shift(g: &MetricGraph) -> f64 {
    let l = g.total_length();
    (PI / l) * (PI / l)
}

/// Discrete λ₁ on a single mesh of size `h`.
pub fn discrete_lambda1(g: &MetricGraph, h: f64) -> Result<f64, FemError> {
    let forms = discretize(g, h)?;
    smallest_nonzero_eigenpair(&forms, default_shift(g)).map(|p| p.value)
}

/// λ₁ with an a-posteriori error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericLambda {
    /// Richardson-extrapolated value.
    pub value: f64,
    /// Difference between the last two extrapolated values, or `|value −
    /// fine|` when only one is available.
    pub error_estimate: f64,
    pub coarse: f64,
    pub fine: f64,
    /// Mesh size of the coarse level.
    pub h: f64,
}

/// λ₁ of a graph from nested meshes and Richardson extrapolation.
///
/// Starts from `h = min edge / 16` and halves the mesh until the error
/// estimate is at most `tol · value` (relative), giving up after five
/// halvings.
pub fn lambda1_numeric(g: &MetricGraph, tol: f64) -> Result<NumericLambda, FemError> {
    lambda1_numeric_from(g, g.min_edge_length() / 16.0, tol)
}

/// As [`lambda1_numeric`] with an explicit initial mesh size.
pub fn lambda1_numeric_from(g: &MetricGraph, h: f64, tol: f64) -> Result<NumericLambda, FemError> {
    let mu = default_shift(g);
    let mut forms = discretize(g, h)?;
    let mut coarse = smallest_nonzero_eigenpair(&forms, mu)?.value;
    let mut best: Option<NumericLambda> = None;
    for _ in 0..5 {
        let fine_forms = forms.refined();
        let fine = smallest_nonzero_eigenpair(&fine_forms, mu)?.value;
        let value = (4.0 * fine - coarse) / 3.0;
        let error_estimate = match best {
            Some(prev) => (value - prev.value).abs(),
            None => (value - fine).abs(),
        };
        let result = NumericLambda {
            value,
            error_estimate,
            coarse,
            fine,
            h: forms.h,
        };
        if result.error_estimate <= tol * value.abs() {
            return Ok(result);
        }
        best = Some(result);
        forms = fine_forms;
        coarse = fine;
    }
    let best = best.expect("at least one refinement");
    Err(FemError::NotConverged {
        value: best.value,
        error_estimate: best.error_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_nodes_and_kernel() {
        let g = MetricGraph::interval(1.0).unwrap();
        assert!(discretize(&g, 1.0).is_err());
        let f = discretize(&g, 0.5).unwrap();
        assert_eq!(f.node_count(), 3);
        let ones = vec![1.0; 3];
        let mut y = vec![0.0; 3];
        f.apply_stiffness(&ones, &mut y);
        assert!(y.iter().all(|v| v.abs() < 1e-14));
    }

    #[test]
    fn star_shares_center_node() {
        let g = MetricGraph::from_named(
            &["c", "a", "b", "d"],
            &[("e0", "c", "a", 1.0), ("e1", "c", "b", 1.0), ("e2", "c", "d", 1.0)],
        )
        .unwrap();
        let f = discretize(&g, 0.25).unwrap();
        for e in 0..3 {
            assert_eq!(f.edge_nodes(e)[0], 0);
        }
    }

    #[test]
    fn shifted_solver_inverts() {
        let g = MetricGraph::from_named(
            &["a", "b", "c"],
            &[("x", "a", "b", 1.0), ("y", "b", "c", 0.7), ("z", "c", "a", 1.3), ("w", "b", "b", 0.9)],
        )
        .unwrap();
        let f = discretize(&g, 0.1).unwrap();
        let mu = 0.7;
        let s = ShiftedSolver::new(&f, mu).unwrap();
        let n = f.node_count();
        let mut seed = 3;
        let x: Vec<f64> = (0..n).map(|_| splitmix_unit(&mut seed)).collect();
        let mut kx = vec![0.0; n];
        let mut mx = vec![0.0; n];
        f.apply_stiffness(&x, &mut kx);
        f.apply_mass(&x, &mut mx);
        let mut b: Vec<f64> = kx.iter().zip(&mx).map(|(k, m)| k + mu * m).collect();
        s.solve(&mut b);
        for i in 0..n {
            assert!((b[i] - x[i]).abs() < 1e-10, "{i}: {} vs {}", b[i], x[i]);
        }
    }

    #[test]
    fn circle_first_eigenvalue() {
        let g = MetricGraph::circle(1.0).unwrap();
        let l = discrete_lambda1(&g, 1.0 / 64.0).unwrap();
        let exact = 4.0 * PI * PI;
        assert!((l - exact).abs() / exact < 2e-3);
        assert!(l >= exact);
    }
}
