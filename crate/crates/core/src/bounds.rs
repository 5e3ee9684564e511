//! Closed-form bounds on the spectral gap and a report comparing them with a
//! computed value.
//!
//! Each formula takes raw statistics and returns `None` outside its domain.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::graph::MetricGraph;

/// Index convention for the Friedlander-type lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FriedlanderConvention {
    /// `(π(n−1)/(2ℓ))²`
    #[default]
    AsPrinted,
    /// `(π(n+1)/(2ℓ))²`, which is `(π/ℓ)²` at `n = 1`.
    Shifted,
}

fn sq(x: f64) -> f64 {
    x * x
}

fn positive(x: f64) -> bool {
    x.is_finite() && x > 0.0
}

pub fn friedlander_lower(n: usize, l: f64, convention: FriedlanderConvention) -> Option<f64> {
    if n < 1 || !positive(l) {
        return None;
    }
    let k = match convention {
        FriedlanderConvention::AsPrinted => n as f64 - 1.0,
        FriedlanderConvention::Shifted => n as f64 + 1.0,
    };
    Some(sq(PI * k / (2.0 * l)))
}

/// `(π n_E / ℓ)²`
pub fn edge_count_upper(n_e: usize, l: f64) -> Option<f64> {
    (n_e >= 1 && positive(l)).then(|| sq(PI * n_e as f64 / l))
}

/// `(π(n_V+1)/diam)²`, for `n_V ≥ 2`.
pub fn kkmm_diameter_upper(n_v: usize, diam: f64) -> Option<f64> {
    (n_v >= 2 && positive(diam)).then(|| sq(PI * (n_v as f64 + 1.0) / diam))
}

/// `(π(n_V−1)/diam_V)²`, for `n_V ≥ 2`.
pub fn kkmm_combinatorial_upper(n_v: usize, diam_v: f64) -> Option<f64> {
    (n_v >= 2 && positive(diam_v)).then(|| sq(PI * (n_v as f64 - 1.0) / diam_v))
}

/// `(π(n_V+2)/(2·diam))²`, for `n_V ≥ 2`.
pub fn sharp_diameter_upper(n_v: usize, diam: f64) -> Option<f64> {
    (n_v >= 2 && positive(diam)).then(|| sq(PI * (n_v as f64 + 2.0) / (2.0 * diam)))
}

/// `(π n_V/(2·diam_V))²`, for `n_V ≥ 2`.
pub fn sharp_combinatorial_upper(n_v: usize, diam_v: f64) -> Option<f64> {
    (n_v >= 2 && positive(diam_v)).then(|| sq(PI * n_v as f64 / (2.0 * diam_v)))
}

/// `((m+1)π/(2ℓ))²` for a chain of `m ≥ 2` pumpkins and total length `ℓ`.
pub fn chain_upper(m: usize, l: f64) -> Option<f64> {
    (m >= 2 && positive(l)).then(|| sq((m as f64 + 1.0) * PI / (2.0 * l)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Friedlander,
    EdgeCount,
    KkmmDiameter,
    KkmmCombinatorial,
    SharpDiameter,
    SharpCombinatorial,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Friedlander => "friedlander",
            BoundKind::EdgeCount => "edge_count",
            BoundKind::KkmmDiameter => "kkmm_diameter",
            BoundKind::KkmmCombinatorial => "kkmm_combinatorial",
            BoundKind::SharpDiameter => "sharp_diameter",
            BoundKind::SharpCombinatorial => "sharp_combinatorial",
        }
    }

    pub fn side(self) -> Side {
        match self {
            BoundKind::Friedlander => Side::Lower,
            _ => Side::Upper,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphStats {
    pub n_v: usize,
    pub n_e: usize,
    pub total_length: f64,
    pub diam: f64,
    /// `None` for a single vertex.
    pub diam_v: Option<f64>,
}

impl GraphStats {
    pub fn of(g: &MetricGraph) -> Self {
        GraphStats {
            n_v: g.vertex_count(),
            n_e: g.edge_count(),
            total_length: g.total_length(),
            diam: g.diameter().value,
            diam_v: g.combinatorial_diameter().ok().map(|d| d.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundEntry {
    pub kind: BoundKind,
    pub value: Option<f64>,
    /// Upper bounds: `value − λ₁`; lower bounds: `λ₁ − value`. Negative
    /// means violated.
    pub margin: Option<f64>,
    pub violated: bool,
}

impl BoundEntry {
    pub fn applicable(&self) -> bool {
        self.value.is_some()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub stats: GraphStats,
    pub lambda1: Option<f64>,
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    pub fn entry(&self, kind: BoundKind) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.kind == kind)
    }

    pub fn is_consistent(&self) -> bool {
        let max_lower = self
            .entries
            .iter()
            .filter(|e| e.kind.side() == Side::Lower)
            .filter_map(|e| e.value)
            .fold(f64::NEG_INFINITY, f64::max);
        let ordered = self
            .entries
            .iter()
            .filter(|e| e.kind.side() == Side::Upper)
            .filter_map(|e| e.value)
            .all(|u| u >= max_lower);
        ordered && !self.entries.iter().any(|e| e.violated)
    }
}

/// Evaluates every bound on `stats`; with `lambda1`, also margins, flagging
/// violations larger than `rel_tol·λ₁`.
pub fn report_from_stats(
    stats: GraphStats,
    lambda1: Option<f64>,
    convention: FriedlanderConvention,
    rel_tol: f64,
) -> BoundReport {
    let values = [
        (
            BoundKind::Friedlander,
            friedlander_lower(1, stats.total_length, convention),
        ),
        (BoundKind::EdgeCount, edge_count_upper(stats.n_e, stats.total_length)),
        (BoundKind::KkmmDiameter, kkmm_diameter_upper(stats.n_v, stats.diam)),
        (
            BoundKind::KkmmCombinatorial,
            stats.diam_v.and_then(|d| kkmm_combinatorial_upper(stats.n_v, d)),
        ),
        (BoundKind::SharpDiameter, sharp_diameter_upper(stats.n_v, stats.diam)),
        (
            BoundKind::SharpCombinatorial,
            stats.diam_v.and_then(|d| sharp_combinatorial_upper(stats.n_v, d)),
        ),
    ];
    let entries = values
        .into_iter()
        .map(|(kind, value)| {
            let margin = match (value, lambda1) {
                (Some(v), Some(l)) => Some(match kind.side() {
                    Side::Upper => v - l,
                    Side::Lower => l - v,
                }),
                _ => None,
            };
            let violated = match (margin, lambda1) {
                (Some(m), Some(l)) => m < -rel_tol * l.abs(),
                _ => false,
            };
            BoundEntry {
                kind,
                value,
                margin,
                violated,
            }
        })
        .collect();
    BoundReport {
        stats,
        lambda1,
        entries,
    }
}

/// The report is about λ₁, so the Friedlander-type bound is taken at index
/// `n = 1`: zero as printed, `(π/ℓ)²` shifted.
pub fn bound_report(g: &MetricGraph, lambda1: Option<f64>, convention: FriedlanderConvention) -> BoundReport {
    report_from_stats(GraphStats::of(g), lambda1, convention, 1e-3)
}
