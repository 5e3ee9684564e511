//! Spectral gaps of compact quantum graphs with Kirchhoff–Neumann vertex
//! conditions.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only the numerical
//! and combinatorial machinery:
//!
//! * [`graph`]: metric graphs, point-to-point distances, both diameters and
//!   the three λ₁-monotone surgeries (cut a pendant, shorten an edge,
//!   identify two vertices).
//! * [`chain`]: pumpkin chains and their weighted one-dimensional
//!   eigenproblem, solved by a Prüfer-angle shooting method.
//! * [`reduction`]: the path-enumeration pipeline that turns an arbitrary
//!   graph into a pumpkin chain without lowering λ₁.
//! * [`bounds`]: closed-form spectral gap bounds and a consistency report.
//! * [`fem`]: a conforming finite-element oracle for λ₁ of arbitrary graphs.
//! * [`extremal`]: the near-optimal pumpkin chains with exact rational
//!   vertex data and integer multiplicities.
//!
//! File formats, the command-line tool and the randomized verification
//! harness live in the companion `qgap` crate.
#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod bounds;
pub mod chain;
pub mod extremal;
pub mod fem;
pub mod graph;
mod linalg;
pub mod reduction;

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

pub use chain::{PiecewiseTrig, PumpkinChain, Segment, SpectralResult};
pub use graph::{GraphPoint, MetricGraph};
