//! Near-optimal pumpkin chains with one double-length segment.
//!
//! All segments have length `a` except segment `j0`, which has length `2a`.
//! With `θ` the angle whose sine and cosine are `2n/(n²+1)` and
//! `(n²−1)/(n²+1)`, the chain is tuned so that `σ₁ = π/(2(a+δ))` with
//! `σ₁δ = 2θ`. The eigenfunction on segment `j` is `bⱼhⱼ`, where `hⱼ` is a
//! cosine (for `j ≤ j0`) or sine (for `j > j0`) with phase `ηⱼ`, a small
//! multiple of `θ`. Every value of `h` and `h′/σ₁` at a vertex is an angle
//! of the form `q·π/2 + p·θ`, so the matching conditions and the resulting
//! multiplicities are computed exactly.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};
use core::fmt;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
#[allow(unused_imports)]
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

use crate::chain::{Piece, PieceShape, PiecewiseTrig, PumpkinChain, Segment};

/// Smallest accepted `n`: the first with `2θ < π/8`.
pub const MIN_N: u64 = 11;

#[derive(Debug, Clone, PartialEq)]
pub enum ExtremalError {
    NTooSmall(u64),
    TooFewSegments(usize),
    J0OutOfRange { j0: usize, m: usize },
    InvalidLength(f64),
    /// A vertex value of `h` or `h′` vanished.
    Degenerate { vertex: usize },
}

impl fmt::Display for ExtremalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtremalError::NTooSmall(n) => write!(f, "n = {n} is below the minimum {MIN_N}"),
            ExtremalError::TooFewSegments(m) => write!(f, "m = {m}, need at least 2 segments"),
            ExtremalError::J0OutOfRange { j0, m } => write!(f, "j0 = {j0} is outside 1..={m}"),
            ExtremalError::InvalidLength(a) => write!(f, "segment length {a} must be positive"),
            ExtremalError::Degenerate { vertex } => {
                write!(f, "matching condition degenerates at vertex {vertex}")
            }
        }
    }
}

impl core::error::Error for ExtremalError {}

/// Exact `(sin θ, cos θ) = (2n/(n²+1), (n²−1)/(n²+1))`.
pub fn theta_from_n(n: u64) -> Result<(BigRational, BigRational), ExtremalError> {
    if n < MIN_N {
        return Err(ExtremalError::NTooSmall(n));
    }
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let den = &n2 + BigInt::one();
    Ok((
        BigRational::new(BigInt::from(2) * &n, den.clone()),
        BigRational::new(n2 - BigInt::one(), den),
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalSpec {
    pub m: usize,
    /// 1-based index of the double-length segment.
    pub j0: usize,
    pub n: u64,
    pub a: f64,
    pub sin_theta: BigRational,
    pub cos_theta: BigRational,
    pub theta: f64,
    pub delta: f64,
    pub sigma1: f64,
    pub total_length: f64,
}

impl ExtremalSpec {
    /// `(π/(2(a+δ)))²`
    pub fn target_lambda(&self) -> f64 {
        self.sigma1 * self.sigma1
    }

    /// `(π/(2a))²`, the value approached as `n → ∞`.
    pub fn limit_lambda(&self) -> f64 {
        let s = PI / (2.0 * self.a);
        s * s
    }

    pub fn segment_length(&self, j: usize) -> f64 {
        if j == self.j0 {
            2.0 * self.a
        } else {
            self.a
        }
    }
}

pub fn build_spec(m: usize, j0: usize, n: u64, a: f64) -> Result<ExtremalSpec, ExtremalError> {
    if m < 2 {
        return Err(ExtremalError::TooFewSegments(m));
    }
    if j0 < 1 || j0 > m {
        return Err(ExtremalError::J0OutOfRange { j0, m });
    }
    if !(a.is_finite() && a > 0.0) {
        return Err(ExtremalError::InvalidLength(a));
    }
    let (sin_theta, cos_theta) = theta_from_n(n)?;
    let nf = n as f64;
    let theta = (2.0 * nf).atan2(nf * nf - 1.0);
    assert!(2.0 * theta < PI / 8.0);
    let delta = 4.0 * a * theta / (PI - 4.0 * theta);
    Ok(ExtremalSpec {
        m,
        j0,
        n,
        a,
        sin_theta,
        cos_theta,
        theta,
        delta,
        sigma1: PI / (2.0 * (a + delta)),
        total_length: (m + 1) as f64 * a,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Cosine,
    Sine,
}

/// Flavor of each `hⱼ` and its phase `ηⱼ` in units of `θ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhasePlan {
    pub flavors: Vec<Flavor>,
    pub eta: Vec<i64>,
}

pub fn phase_plan(spec: &ExtremalSpec) -> PhasePlan {
    let m = spec.m;
    let mut flavors = Vec::with_capacity(m);
    let mut eta = Vec::with_capacity(m);
    for j in 1..=m {
        flavors.push(if j <= spec.j0 { Flavor::Cosine } else { Flavor::Sine });
        let base = if j == 1 {
            0
        } else if j < m {
            1
        } else {
            2
        };
        eta.push(if j == spec.j0 { 2 * base } else { base });
    }
    PhasePlan { flavors, eta }
}

/// An angle `quarters·π/2 + multiple·θ`.
#[derive(Debug, Clone, Copy)]
struct Angle {
    quarters: i64,
    multiple: i64,
}

struct ExactTrig<'a> {
    sin: &'a BigRational,
    cos: &'a BigRational,
}

impl ExactTrig<'_> {
    /// `(cos, sin)` of the angle.
    fn eval(&self, angle: Angle) -> (BigRational, BigRational) {
        let mut c = BigRational::one();
        let mut s = BigRational::zero();
        for _ in 0..angle.multiple.unsigned_abs() {
            let nc = &c * self.cos - &s * self.sin;
            let ns = &s * self.cos + &c * self.sin;
            c = nc;
            s = ns;
        }
        if angle.multiple < 0 {
            s = -s;
        }
        for _ in 0..angle.quarters.rem_euclid(4) {
            let nc = -s.clone();
            s = c;
            c = nc;
        }
        (c, s)
    }

    /// `(h, h′/σ₁)` of a segment function at the given argument.
    fn h(&self, flavor: Flavor, angle: Angle) -> (BigRational, BigRational) {
        let (c, s) = self.eval(angle);
        match flavor {
            Flavor::Cosine => (c, -s),
            Flavor::Sine => (s, c),
        }
    }
}

/// Exact data at the interface between segments `j − 1` and `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexValues {
    /// `hⱼ₋₁(xⱼ)`
    pub left_value: BigRational,
    /// `h′ⱼ₋₁(xⱼ)/σ₁`
    pub left_slope: BigRational,
    /// `hⱼ(xⱼ)`
    pub right_value: BigRational,
    /// `h′ⱼ(xⱼ)/σ₁`
    pub right_slope: BigRational,
}

/// Vertex values for the interfaces `j = 2..=m`, in order.
pub fn vertex_values(spec: &ExtremalSpec) -> Vec<VertexValues> {
    let plan = phase_plan(spec);
    let trig = ExactTrig {
        sin: &spec.sin_theta,
        cos: &spec.cos_theta,
    };
    (1..spec.m)
        .map(|i| {
            // σ₁a = π/2 − 2θ and σ₁·2a = π − 4θ
            let (q, p) = if i == spec.j0 { (2, -4) } else { (1, -2) };
            let (left_value, left_slope) = trig.h(
                plan.flavors[i - 1],
                Angle {
                    quarters: q,
                    multiple: p + plan.eta[i - 1],
                },
            );
            let (right_value, right_slope) = trig.h(
                plan.flavors[i],
                Angle {
                    quarters: 0,
                    multiple: plan.eta[i],
                },
            );
            VertexValues {
                left_value,
                left_slope,
                right_value,
                right_slope,
            }
        })
        .collect()
}

/// Smallest positive integers `k₁, …, k_m` with
/// `kⱼ₋₁ h′ⱼ₋₁(xⱼ) hⱼ(xⱼ) = kⱼ h′ⱼ(xⱼ) hⱼ₋₁(xⱼ)` at every interface.
pub fn multiplicities(spec: &ExtremalSpec) -> Result<Vec<BigUint>, ExtremalError> {
    let mut ratios = vec![BigRational::one()];
    for (i, v) in vertex_values(spec).iter().enumerate() {
        let den = &v.right_slope * &v.left_value;
        let num = &v.left_slope * &v.right_value;
        if den.is_zero() || num.is_zero() {
            return Err(ExtremalError::Degenerate { vertex: i + 2 });
        }
        let next = &ratios[i] * num / den;
        if !next.is_positive() {
            return Err(ExtremalError::Degenerate { vertex: i + 2 });
        }
        ratios.push(next);
    }
    let lcm = ratios
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = ratios
        .iter()
        .map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, k| acc.gcd(k));
    Ok(ints
        .into_iter()
        .map(|k| (k / &gcd).to_biguint().expect("positive by construction"))
        .collect())
}

pub fn build_chain(spec: &ExtremalSpec) -> Result<PumpkinChain, ExtremalError> {
    let ks = multiplicities(spec)?;
    let segments = ks
        .into_iter()
        .enumerate()
        .map(|(i, k)| Segment::new(spec.segment_length(i + 1), k))
        .collect();
    Ok(PumpkinChain::new(segments).expect("lengths and multiplicities are positive"))
}

/// Exact amplitudes `bⱼ` with `b₁ = 1`, from continuity of the value.
pub fn amplitudes(spec: &ExtremalSpec) -> Result<Vec<BigRational>, ExtremalError> {
    let mut b = vec![BigRational::one()];
    for (i, v) in vertex_values(spec).iter().enumerate() {
        if v.right_value.is_zero() {
            return Err(ExtremalError::Degenerate { vertex: i + 2 });
        }
        let next = &b[i] * &v.left_value / &v.right_value;
        b.push(next);
    }
    Ok(b)
}

/// Residuals of value continuity and flux continuity at each interface,
/// `bⱼ₋₁hⱼ₋₁ − bⱼhⱼ` and `bⱼ₋₁kⱼ₋₁h′ⱼ₋₁ − bⱼkⱼh′ⱼ` (the latter over σ₁).
pub fn matching_residuals(
    spec: &ExtremalSpec,
    ks: &[BigUint],
) -> Result<Vec<(BigRational, BigRational)>, ExtremalError> {
    let b = amplitudes(spec)?;
    let k: Vec<BigRational> = ks
        .iter()
        .map(|k| BigRational::from_integer(BigInt::from(k.clone())))
        .collect();
    Ok(vertex_values(spec)
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let value = &b[i] * &v.left_value - &b[i + 1] * &v.right_value;
            let flux = &b[i] * &k[i] * &v.left_slope - &b[i + 1] * &k[i + 1] * &v.right_slope;
            (value, flux)
        })
        .collect())
}

/// The constructed eigenfunction `φ = bⱼhⱼ` at frequency `σ₁`.
pub fn build_eigenfunction(spec: &ExtremalSpec) -> Result<PiecewiseTrig, ExtremalError> {
    let plan = phase_plan(spec);
    let b = amplitudes(spec)?;
    let mut pieces = Vec::with_capacity(spec.m);
    let mut x = 0.0;
    for j in 0..spec.m {
        let len = spec.segment_length(j + 1);
        let eta = plan.eta[j] as f64 * spec.theta;
        let phase = match plan.flavors[j] {
            Flavor::Cosine => eta,
            Flavor::Sine => eta - FRAC_PI_2,
        };
        pieces.push(Piece {
            start: x,
            end: x + len,
            shape: PieceShape::Trig {
                amplitude: b[j].to_f64().unwrap_or(f64::NAN),
                phase,
            },
        });
        x += len;
    }
    Ok(PiecewiseTrig::new(spec.sigma1, pieces))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalReport {
    pub multiplicities: Vec<BigUint>,
    pub target_lambda: f64,
    pub solver_lambda: f64,
    pub relative_difference: f64,
    /// The solver's index-1 root is `σ₁` and no smaller root exists.
    pub index_one: bool,
    /// `(π/2a)² − λ₁`
    pub slack: f64,
    pub residuals_exactly_zero: bool,
    pub zeros: Vec<f64>,
    /// `x_{j0} + a`
    pub double_segment_midpoint: f64,
}

pub fn verify(spec: &ExtremalSpec, tol: f64) -> Result<ExtremalReport, ExtremalError> {
    let ks = multiplicities(spec)?;
    let residuals = matching_residuals(spec, &ks)?;
    let chain = build_chain(spec)?;
    let result = chain
        .eigenvalue(1, tol)
        .expect("tolerance is validated by the caller");
    let target = spec.target_lambda();
    let rel = (result.lambda - target).abs() / target;
    let below = chain.prufer_sweep(spec.sigma1 * (1.0 - 1e-9)) < PI;
    let above = chain.prufer_sweep(spec.sigma1 * (1.0 + 1e-9)) >= PI;
    let phi = build_eigenfunction(spec)?;
    Ok(ExtremalReport {
        multiplicities: ks,
        target_lambda: target,
        solver_lambda: result.lambda,
        relative_difference: rel,
        index_one: below && above,
        slack: spec.limit_lambda() - result.lambda,
        residuals_exactly_zero: residuals.iter().all(|(v, f)| v.is_zero() && f.is_zero()),
        zeros: phi.zeros(),
        double_segment_midpoint: chain.starts()[spec.j0 - 1] + spec.a,
    })
}
