//! Pumpkin chains and their longitudinal eigenproblem.
//!
//! A chain of `m` equilateral pumpkins is described by the segment lengths
//! `ℓⱼ` and multiplicities `kⱼ`. Functions depending only on the
//! longitudinal coordinate `x ∈ [0, ℓ]` see the piecewise-constant weight
//! `ρ(x) = kⱼ`, and the spectral gap is the smallest positive eigenvalue of
//! `−(ρu′)′ = λρu` with Neumann ends and `u`, `ρu′` continuous.
//!
//! Eigenvalues are computed by shooting on the Prüfer phase. On segment `j`
//! a solution is `A cos(σ(x − xⱼ) + φ)`, so the phase advances by `σℓⱼ`.
//! Across an interface `tan φ` is multiplied by `kⱼ₋₁/kⱼ` while the
//! quadrant is kept. The terminal phase is continuous and strictly
//! increasing in `σ` and the `n`-th eigenfrequency is where it equals `nπ`.
//! Only phases and ratios of adjacent multiplicities are ever formed, which
//! keeps multiplicity jumps of 10¹⁰ per interface harmless.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};
use core::fmt;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
#[allow(unused_imports)]
use num_traits::{Float, ToPrimitive, Zero};

use crate::graph::{Edge, MetricGraph};

#[derive(Debug, Clone, PartialEq)]
pub enum ChainError {
    Empty,
    InvalidLength { index: usize, length: f64 },
    ZeroMultiplicity { index: usize },
    OutOfRange(f64),
    InvalidTolerance(f64),
    ZeroIndex,
    TooFewSegments { needed: usize },
    /// The spectral result was not produced on this chain.
    MismatchedResult,
    ZeroFunction,
    /// Too many parallel edges to materialize as a graph.
    TooLarge,
    BadSamples,
}

impl fmt::Display for ChainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainError::Empty => write!(f, "chain has no segments"),
            ChainError::InvalidLength { index, length } => {
                write!(f, "segment {index} has invalid length {length}")
            }
            ChainError::ZeroMultiplicity { index } => {
                write!(f, "segment {index} has multiplicity zero")
            }
            ChainError::OutOfRange(x) => write!(f, "position {x} lies outside the chain"),
            ChainError::InvalidTolerance(t) => write!(f, "tolerance {t} must be positive"),
            ChainError::ZeroIndex => write!(f, "eigenvalue index must be at least 1"),
            ChainError::TooFewSegments { needed } => {
                write!(f, "at least {needed} segments are required")
            }
            ChainError::MismatchedResult => {
                write!(f, "spectral result does not belong to this chain")
            }
            ChainError::ZeroFunction => write!(f, "function vanishes identically"),
            ChainError::TooLarge => write!(f, "multiplicities too large to build the graph"),
            ChainError::BadSamples => write!(f, "samples must be increasing and span the chain"),
        }
    }
}

impl core::error::Error for ChainError {}

#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub length: f64,
    pub multiplicity: BigUint,
}

impl Segment {
    pub fn new(length: f64, multiplicity: impl Into<BigUint>) -> Self {
        Segment {
            length,
            multiplicity: multiplicity.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PumpkinChain {
    segments: Vec<Segment>,
    starts: Vec<f64>,
    total: f64,
}

/// An eigenvalue `λ = σ²` of a chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralResult {
    pub sigma: f64,
    pub lambda: f64,
    /// 1 for the spectral gap.
    pub index: usize,
    /// Width of the final bisection bracket on `σ`.
    pub bracket_width: f64,
    /// Terminal phase minus `index·π` at `sigma`.
    pub secular_residual: f64,
}

/// Default absolute tolerance on `σ`.
pub const DEFAULT_TOL: f64 = 1e-12;

impl PumpkinChain {
    pub fn new(segments: Vec<Segment>) -> Result<Self, ChainError> {
        if segments.is_empty() {
            return Err(ChainError::Empty);
        }
        let mut starts = Vec::with_capacity(segments.len());
        let mut x = 0.0;
        for (index, s) in segments.iter().enumerate() {
            if !(s.length.is_finite() && s.length > 0.0) {
                return Err(ChainError::InvalidLength {
                    index,
                    length: s.length,
                });
            }
            if s.multiplicity.is_zero() {
                return Err(ChainError::ZeroMultiplicity { index });
            }
            starts.push(x);
            x += s.length;
        }
        Ok(PumpkinChain {
            segments,
            starts,
            total: x,
        })
    }

    /// Chain from `(length, multiplicity)` pairs.
    pub fn from_pairs(pairs: &[(f64, u64)]) -> Result<Self, ChainError> {
        Self::new(pairs.iter().map(|&(l, k)| Segment::new(l, k)).collect())
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Number of pumpkins `m`.
    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn total_length(&self) -> f64 {
        self.total
    }

    /// Left end `xⱼ` of every segment.
    pub fn starts(&self) -> &[f64] {
        &self.starts
    }

    fn end(&self, j: usize) -> f64 {
        if j + 1 == self.len() {
            self.total
        } else {
            self.starts[j + 1]
        }
    }

    pub fn multiplicity_f64(&self, j: usize) -> f64 {
        self.segments[j].multiplicity.to_f64().unwrap_or(f64::INFINITY)
    }

    /// `kⱼ₋₁ / kⱼ`, rounded once from the exact ratio.
    pub fn interface_ratio(&self, j: usize) -> f64 {
        let num = BigInt::from(self.segments[j - 1].multiplicity.clone());
        let den = BigInt::from(self.segments[j].multiplicity.clone());
        BigRational::new(num, den).to_f64().unwrap_or(f64::INFINITY)
    }

    /// Index of the segment containing `x`; interface points belong to the
    /// segment on their left.
    pub fn segment_at(&self, x: f64) -> Result<usize, ChainError> {
        if !(x >= 0.0 && x <= self.total) {
            return Err(ChainError::OutOfRange(x));
        }
        let j = self.starts.partition_point(|&s| s < x);
        Ok(j.saturating_sub(1))
    }

    /// The edge weight `ρ(x)`.
    pub fn weight_at(&self, x: f64) -> Result<&BigUint, ChainError> {
        Ok(&self.segments[self.segment_at(x)?].multiplicity)
    }

    /// All lengths multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Result<Self, ChainError> {
        Self::new(
            self.segments
                .iter()
                .map(|s| Segment::new(s.length * c, s.multiplicity.clone()))
                .collect(),
        )
    }

    /// The full quantum graph: vertex `vⱼ` at each level, `kⱼ` parallel
    /// edges per pumpkin. Refuses more than `max_edges` edges.
    pub fn to_metric_graph(&self, max_edges: usize) -> Result<MetricGraph, ChainError> {
        let mut total = 0usize;
        for s in &self.segments {
            let k = s.multiplicity.to_usize().ok_or(ChainError::TooLarge)?;
            total = total.checked_add(k).ok_or(ChainError::TooLarge)?;
        }
        if total > max_edges {
            return Err(ChainError::TooLarge);
        }
        let vertices = (0..=self.len()).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::with_capacity(total);
        for (j, s) in self.segments.iter().enumerate() {
            let k = s.multiplicity.to_usize().unwrap_or(0);
            for i in 0..k {
                edges.push(Edge {
                    name: format!("s{j}e{i}"),
                    from: j,
                    to: j + 1,
                    length: s.length,
                });
            }
        }
        MetricGraph::new(vertices, edges).map_err(|_| ChainError::TooLarge)
    }

    fn sweep(&self, sigma: f64, mut record: Option<&mut Vec<(f64, f64)>>) -> f64 {
        let mut phase = 0.0;
        let mut amplitude = 1.0;
        for (j, s) in self.segments.iter().enumerate() {
            if j > 0 {
                let r = self.interface_ratio(j);
                let turns = ((phase + FRAC_PI_2) / PI).floor();
                let psi = phase - turns * PI;
                let (sn, cs) = psi.sin_cos();
                let new_psi = (r * sn).atan2(cs);
                // continuity of u: A' cos ψ' = A cos ψ with (cos ψ', sin ψ') ∝ (cos ψ, r sin ψ)
                amplitude *= cs.hypot(r * sn);
                phase = turns * PI + new_psi;
            }
            if let Some(rec) = record.as_deref_mut() {
                rec.push((phase, amplitude));
            }
            phase += sigma * s.length;
        }
        phase
    }

    /// Terminal Prüfer phase at frequency `sigma`, starting from the
    /// Neumann phase 0 at `x = 0`.
    pub fn prufer_sweep(&self, sigma: f64) -> f64 {
        self.sweep(sigma, None)
    }

    /// The `index`-th nonzero eigenvalue, bracketed on `σ` to width `tol`.
    pub fn eigenvalue(&self, index: usize, tol: f64) -> Result<SpectralResult, ChainError> {
        if !(tol > 0.0) {
            return Err(ChainError::InvalidTolerance(tol));
        }
        if index == 0 {
            return Err(ChainError::ZeroIndex);
        }
        let target = index as f64 * PI;
        let mut lo = 0.0;
        let mut hi = PI * (self.len() + 1) as f64 / self.total + 1.0;
        while self.prufer_sweep(hi) < target {
            lo = hi;
            hi *= 2.0;
        }
        for _ in 0..2000 {
            if hi - lo <= tol {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.prufer_sweep(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let sigma = 0.5 * (lo + hi);
        Ok(SpectralResult {
            sigma,
            lambda: sigma * sigma,
            index,
            bracket_width: hi - lo,
            secular_residual: self.prufer_sweep(sigma) - target,
        })
    }

    /// Spectral gap with the default tolerance.
    pub fn spectral_gap(&self) -> SpectralResult {
        self.eigenvalue(1, DEFAULT_TOL)
            .expect("default tolerance and index are valid")
    }

    /// The eigenfunction belonging to `result`, normalized to `φ(0) = 1`.
    pub fn eigenfunction(&self, result: &SpectralResult) -> Result<PiecewiseTrig, ChainError> {
        let sigma = result.sigma;
        let target = result.index as f64 * PI;
        let w = result.bracket_width.max(8.0 * f64::EPSILON * sigma);
        if !(self.prufer_sweep(sigma - w) <= target + 1e-9
            && self.prufer_sweep(sigma + w) >= target - 1e-9)
        {
            return Err(ChainError::MismatchedResult);
        }
        let mut rec = Vec::with_capacity(self.len());
        self.sweep(sigma, Some(&mut rec));
        let pieces = rec
            .iter()
            .enumerate()
            .map(|(j, &(phase, amplitude))| Piece {
                start: self.starts[j],
                end: self.end(j),
                shape: PieceShape::Trig { amplitude, phase },
            })
            .collect();
        Ok(PiecewiseTrig::new(sigma, pieces))
    }

    /// `∫ f ρ dx`
    pub fn weighted_mean(&self, f: &PiecewiseTrig) -> f64 {
        self.integrate(f).2
    }

    /// `∫|f′|²ρ / ∫|f|²ρ`, evaluated in closed form.
    pub fn rayleigh_quotient(&self, f: &PiecewiseTrig) -> Result<f64, ChainError> {
        let (num, den, _) = self.integrate(f);
        if !(den > 0.0) {
            return Err(ChainError::ZeroFunction);
        }
        Ok(num / den)
    }

    /// Returns `(∫|f′|²ρ, ∫|f|²ρ, ∫fρ)`.
    fn integrate(&self, f: &PiecewiseTrig) -> (f64, f64, f64) {
        let (mut num, mut den, mut mean) = (0.0, 0.0, 0.0);
        for p in &f.pieces {
            for j in 0..self.len() {
                let a = p.start.max(self.starts[j]);
                let b = p.end.min(self.end(j));
                if b <= a {
                    continue;
                }
                let k = self.multiplicity_f64(j);
                let (d2, f2, f1) = p.integrals(f.frequency, a, b);
                num += k * d2;
                den += k * f2;
                mean += k * f1;
            }
        }
        (num, den, mean)
    }

    /// Rayleigh quotient of the piecewise-linear interpolant of
    /// `(xs[i], ys[i])`. The samples must be strictly increasing from 0 to ℓ.
    pub fn rayleigh_quotient_sampled(&self, xs: &[f64], ys: &[f64]) -> Result<f64, ChainError> {
        if xs.len() < 2
            || xs.len() != ys.len()
            || xs[0] != 0.0
            || (xs[xs.len() - 1] - self.total).abs() > 1e-12 * self.total
            || xs.windows(2).any(|w| !(w[1] > w[0]))
        {
            return Err(ChainError::BadSamples);
        }
        let (mut num, mut den) = (0.0, 0.0);
        for i in 0..xs.len() - 1 {
            let (x0, x1, y0, y1) = (xs[i], xs[i + 1], ys[i], ys[i + 1]);
            let slope = (y1 - y0) / (x1 - x0);
            for j in 0..self.len() {
                let a = x0.max(self.starts[j]);
                let b = x1.min(self.end(j));
                if b <= a {
                    continue;
                }
                let k = self.multiplicity_f64(j);
                let fa = y0 + slope * (a - x0);
                let fb = y0 + slope * (b - x0);
                num += k * slope * slope * (b - a);
                den += k * (b - a) * (fa * fa + fa * fb + fb * fb) / 3.0;
            }
        }
        if !(den > 0.0) {
            return Err(ChainError::ZeroFunction);
        }
        Ok(num / den)
    }

    /// Longest segment and the longest among the others; ties go to the
    /// lower index.
    pub fn longest_two(&self) -> (usize, Option<usize>) {
        let longest = argmax(self.segments.iter().map(|s| s.length), None);
        let second = if self.len() > 1 {
            Some(argmax(self.segments.iter().map(|s| s.length), Some(longest)))
        } else {
            None
        };
        (longest, second)
    }

    fn weight_between(&self, a: f64, b: f64) -> f64 {
        (0..self.len())
            .map(|j| {
                let lo = a.max(self.starts[j]);
                let hi = b.min(self.end(j));
                if hi > lo {
                    self.multiplicity_f64(j) * (hi - lo)
                } else {
                    0.0
                }
            })
            .sum()
    }

    /// Half a cosine wave across the longest pumpkin, constant elsewhere,
    /// with `∫ψ₁ρ = 0` and `b₁² + b₂² = 1`.
    pub fn test_function_psi1(&self) -> PiecewiseTrig {
        let (p, _) = self.longest_two();
        let x1 = self.starts[p];
        let l1 = self.segments[p].length;
        let c = self.multiplicity_f64(p) * l1 / PI;
        let wl = self.weight_between(0.0, x1);
        let wr = self.weight_between(x1 + l1, self.total);
        let (b1, b2) = normalize(wr + c, wl + c);
        let mid = x1 + 0.5 * l1;
        let mut pieces = Vec::new();
        push_piece(&mut pieces, 0.0, x1, PieceShape::Plateau(b1));
        push_piece(&mut pieces, x1, mid, PieceShape::Trig { amplitude: b1, phase: 0.0 });
        push_piece(
            &mut pieces,
            mid,
            x1 + l1,
            PieceShape::Trig {
                amplitude: b2,
                phase: FRAC_PI_2,
            },
        );
        push_piece(&mut pieces, x1 + l1, self.total, PieceShape::Plateau(-b2));
        PiecewiseTrig::new(PI / l1, pieces)
    }

    /// Quarter cosine waves of half-period `2ℓ₂` fitted into the two longest
    /// pumpkins, zero between them and constant outside; orthogonal to
    /// constants and normalized like ψ₁.
    pub fn test_function_psi2(&self) -> Result<PiecewiseTrig, ChainError> {
        let (p, q) = self.longest_two();
        let q = q.ok_or(ChainError::TooFewSegments { needed: 2 })?;
        let l2 = self.segments[q].length;
        let (first, second) = (p.min(q), p.max(q));
        let wave_start = self.starts[first];
        let wave_end = self.end(second);
        let c_first = self.multiplicity_f64(first) * 2.0 * l2 / PI;
        let c_second = self.multiplicity_f64(second) * 2.0 * l2 / PI;
        let wl = self.weight_between(0.0, wave_start);
        let wr = self.weight_between(wave_end, self.total);
        let (b1, b2) = normalize(wr + c_second, wl + c_first);
        let mut pieces = Vec::new();
        push_piece(&mut pieces, 0.0, wave_start, PieceShape::Plateau(b1));
        push_piece(
            &mut pieces,
            wave_start,
            wave_start + l2,
            PieceShape::Trig { amplitude: b1, phase: 0.0 },
        );
        push_piece(&mut pieces, wave_start + l2, wave_end - l2, PieceShape::Plateau(0.0));
        push_piece(
            &mut pieces,
            wave_end - l2,
            wave_end,
            PieceShape::Trig {
                amplitude: b2,
                phase: FRAC_PI_2,
            },
        );
        push_piece(&mut pieces, wave_end, self.total, PieceShape::Plateau(-b2));
        Ok(PiecewiseTrig::new(PI / (2.0 * l2), pieces))
    }

    /// Largest jump of `ρf′` across interfaces, relative to `max |kⱼ bⱼ σ|`.
    pub fn flux_defect(&self, f: &PiecewiseTrig) -> f64 {
        let mut scale: f64 = 0.0;
        for (j, p) in f.pieces.iter().enumerate() {
            if let PieceShape::Trig { amplitude, .. } = p.shape {
                let seg = self.segment_at(p.start + 0.5 * (p.end - p.start)).unwrap_or(j);
                scale = scale.max((self.multiplicity_f64(seg) * amplitude * f.frequency).abs());
            }
        }
        let mut worst: f64 = 0.0;
        for j in 1..self.len() {
            let x = self.starts[j];
            let left = self.multiplicity_f64(j - 1) * f.derivative_from_left(x);
            let right = self.multiplicity_f64(j) * f.derivative_from_right(x);
            worst = worst.max((left - right).abs());
        }
        if scale > 0.0 {
            worst / scale
        } else {
            worst
        }
    }
}

fn argmax(values: impl Iterator<Item = f64>, skip: Option<usize>) -> usize {
    let mut best = (usize::MAX, f64::NEG_INFINITY);
    for (i, v) in values.enumerate() {
        if Some(i) != skip && v > best.1 {
            best = (i, v);
        }
    }
    best.0
}

fn normalize(a: f64, b: f64) -> (f64, f64) {
    let n = a.hypot(b);
    assert!(n > 0.0, "orthogonality system has no nonzero solution");
    (a / n, b / n)
}

fn push_piece(pieces: &mut Vec<Piece>, start: f64, end: f64, shape: PieceShape) {
    if end > start {
        pieces.push(Piece { start, end, shape });
    }
}

/// `k₁ sin(σℓ₁) cos(σℓ₂) − k₂ cos(σℓ₁) sin(σℓ₂)`.
///
/// This agrees with [`matching_determinant_m2`] only up to the sign of the
/// second term: both vanish together when `ℓ₁ = ℓ₂` or `σℓ₁`, `σℓ₂` hit
/// multiples of π/2, but in general the eigenfrequencies of a two-pumpkin
/// chain are the roots of the determinant, not of this expression.
pub fn secular_m2(k1: f64, k2: f64, l1: f64, l2: f64, sigma: f64) -> f64 {
    let (s1, c1) = (sigma * l1).sin_cos();
    let (s2, c2) = (sigma * l2).sin_cos();
    k1 * s1 * c2 - k2 * c1 * s2
}

/// Determinant of the matching system for `φ = b₁cos(σx)` on `[0, ℓ₁]` and
/// `b₂cos(σ(ℓ − x))` on `[ℓ₁, ℓ]`:
/// `k₁ sin(σℓ₁) cos(σℓ₂) + k₂ cos(σℓ₁) sin(σℓ₂)`. Its positive roots are the
/// eigenfrequencies of the two-pumpkin chain.
pub fn matching_determinant_m2(k1: f64, k2: f64, l1: f64, l2: f64, sigma: f64) -> f64 {
    let (s1, c1) = (sigma * l1).sin_cos();
    let (s2, c2) = (sigma * l2).sin_cos();
    k1 * s1 * c2 + k2 * c1 * s2
}

/// How a piece depends on `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PieceShape {
    /// `amplitude · cos(σ(x − start) + phase)`
    Trig { amplitude: f64, phase: f64 },
    Plateau(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece {
    pub start: f64,
    pub end: f64,
    pub shape: PieceShape,
}

impl Piece {
    fn value(&self, sigma: f64, x: f64) -> f64 {
        match self.shape {
            PieceShape::Trig { amplitude, phase } => amplitude * (sigma * (x - self.start) + phase).cos(),
            PieceShape::Plateau(c) => c,
        }
    }

    fn derivative(&self, sigma: f64, x: f64) -> f64 {
        match self.shape {
            PieceShape::Trig { amplitude, phase } => {
                -amplitude * sigma * (sigma * (x - self.start) + phase).sin()
            }
            PieceShape::Plateau(_) => 0.0,
        }
    }

    /// `(∫|f′|², ∫|f|², ∫f)` over `[a, b]`.
    fn integrals(&self, sigma: f64, a: f64, b: f64) -> (f64, f64, f64) {
        match self.shape {
            PieceShape::Trig { amplitude, phase } if sigma > 0.0 => {
                let ua = sigma * (a - self.start) + phase;
                let ub = sigma * (b - self.start) + phase;
                let half = 0.5 * (b - a);
                let osc = ((2.0 * ub).sin() - (2.0 * ua).sin()) / (4.0 * sigma);
                let a2 = amplitude * amplitude;
                (
                    a2 * sigma * sigma * (half - osc),
                    a2 * (half + osc),
                    amplitude * (ub.sin() - ua.sin()) / sigma,
                )
            }
            PieceShape::Trig { amplitude, phase } => {
                let c = amplitude * phase.cos();
                (0.0, c * c * (b - a), c * (b - a))
            }
            PieceShape::Plateau(c) => (0.0, c * c * (b - a), c * (b - a)),
        }
    }
}

/// A function on `[0, ℓ]` made of cosine pieces sharing one frequency and
/// constant plateaus.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseTrig {
    frequency: f64,
    pieces: Vec<Piece>,
}

impl PiecewiseTrig {
    /// Pieces must be contiguous and in increasing order.
    pub fn new(frequency: f64, pieces: Vec<Piece>) -> Self {
        debug_assert!(pieces.windows(2).all(|w| (w[0].end - w[1].start).abs() <= 1e-12 * w[1].start.abs().max(1.0)));
        PiecewiseTrig { frequency, pieces }
    }

    pub fn frequency(&self) -> f64 {
        self.frequency
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.pieces[0].start, self.pieces[self.pieces.len() - 1].end)
    }

    fn piece_index(&self, x: f64) -> usize {
        let i = self.pieces.partition_point(|p| p.start < x);
        i.saturating_sub(1).min(self.pieces.len() - 1)
    }

    pub fn value(&self, x: f64) -> f64 {
        self.pieces[self.piece_index(x)].value(self.frequency, x)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        self.pieces[self.piece_index(x)].derivative(self.frequency, x)
    }

    fn derivative_from_left(&self, x: f64) -> f64 {
        self.derivative(x)
    }

    fn derivative_from_right(&self, x: f64) -> f64 {
        let i = self.pieces.partition_point(|p| p.start <= x);
        let p = &self.pieces[i.saturating_sub(1)];
        p.derivative(self.frequency, x)
    }

    pub fn max_amplitude(&self) -> f64 {
        self.pieces
            .iter()
            .map(|p| match p.shape {
                PieceShape::Trig { amplitude, .. } => amplitude.abs(),
                PieceShape::Plateau(c) => c.abs(),
            })
            .fold(0.0, f64::max)
    }

    /// Largest jump of the value at internal breakpoints relative to the
    /// largest amplitude.
    pub fn continuity_defect(&self) -> f64 {
        let scale = self.max_amplitude();
        let worst = self
            .pieces
            .windows(2)
            .map(|w| (w[0].value(self.frequency, w[0].end) - w[1].value(self.frequency, w[1].start)).abs())
            .fold(0.0, f64::max);
        if scale > 0.0 {
            worst / scale
        } else {
            worst
        }
    }

    /// Isolated zeros of the cosine pieces, in increasing order.
    pub fn zeros(&self) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        let sigma = self.frequency;
        for p in &self.pieces {
            let PieceShape::Trig { amplitude, phase } = p.shape else {
                continue;
            };
            if amplitude == 0.0 || sigma <= 0.0 {
                continue;
            }
            let ua = phase;
            let ub = sigma * (p.end - p.start) + phase;
            // zeros of cos at u = π/2 + nπ
            let mut n = ((ua - FRAC_PI_2) / PI).ceil();
            loop {
                let u = FRAC_PI_2 + n * PI;
                if u > ub {
                    break;
                }
                let x = p.start + (u - phase) / sigma;
                if out.last().is_none_or(|&z| (x - z).abs() > 1e-12 * (1.0 + x.abs())) {
                    out.push(x);
                }
                n += 1.0;
            }
        }
        out
    }

    /// Number of sign changes along a uniform grid of `samples` points plus
    /// every breakpoint.
    pub fn sign_changes(&self, samples: usize) -> usize {
        let (a, b) = self.domain();
        let mut xs: Vec<f64> = (0..samples)
            .map(|i| a + (b - a) * i as f64 / (samples - 1).max(1) as f64)
            .collect();
        xs.extend(self.pieces.iter().map(|p| p.start));
        xs.sort_by(f64::total_cmp);
        let scale = self.max_amplitude();
        let mut last_sign = 0.0;
        let mut changes = 0;
        for x in xs {
            let v = self.value(x);
            if v.abs() <= 1e-13 * scale {
                continue;
            }
            let s = v.signum();
            if last_sign != 0.0 && s != last_sign {
                changes += 1;
            }
            last_sign = s;
        }
        changes
    }
}

/// Segment index of every point of a uniform grid on the chain, with all
/// interfaces inserted; used for function sampling.
pub fn sample_grid(chain: &PumpkinChain, samples: usize) -> Vec<(f64, usize)> {
    let l = chain.total_length();
    let n = samples.max(2);
    let mut xs: Vec<f64> = (0..n).map(|i| l * i as f64 / (n - 1) as f64).collect();
    xs.extend(chain.starts().iter().skip(1).copied());
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * l);
    let mut out = vec![];
    for x in xs {
        out.push((x, chain.segment_at(x).unwrap_or(0)));
    }
    out
}
