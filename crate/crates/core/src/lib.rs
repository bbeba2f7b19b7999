//! Minimum (weighted) vertex cover on intersection graphs of axis-parallel
//! rectangles.
//!
//! Two approximation schemes are provided: a `(1 + ε)` scheme for
//! non-crossing families built on the arrangement graph of rectangle
//! boundaries, and a `(1.5 + ε)` algorithm for arbitrary families (weighted
//! or not). An exact branch-and-bound solver and the fractional LP bound are
//! included as oracles.
//!
//! Everything is generic over a [`Scalar`] used for coordinates and weights.
//! The aliases below fix the two common choices.

// `!(w >= 0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arrangement;
pub mod clean;
pub mod cli;
pub mod decompose;
pub mod error;
pub mod generate;
pub mod geometry;
pub mod graphs;
pub mod kernelize;
pub mod scalar;
pub mod solvers;
#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use geometry::{IntersectionKind, Interval, Point, Rect, RectFamily, RectId};
pub use graphs::{Cover, IntersectionGraph, SimpleGraph, WeightedGraph};
pub use scalar::Scalar;
pub use solvers::{Algorithm, CoverResult, Params, SolverConfig};

/// Exact rational scalar, the reference instantiation.
pub type Rational = num_rational::Rational64;

pub type ExactRect = Rect<Rational>;
pub type ExactFamily = RectFamily<Rational>;
pub type ExactGraph = WeightedGraph<Rational>;
pub type ExactCoverResult = CoverResult<Rational>;

pub type FloatRect = Rect<f64>;
pub type FloatFamily = RectFamily<f64>;
pub type FloatGraph = WeightedGraph<f64>;
pub type FloatCoverResult = CoverResult<f64>;
