//! Exact exterior calculus on a fixed 5-dimensional coordinate chart.
//!
//! The library checks the pointwise and generic conditions that characterize
//! Cartan (2,3,5)- and (3,5)-distributions, computes the singular strata of the
//! associated jet-space relations at exact fiber points, and certifies
//! ampleness through rank arguments, quadric spectra and convex-hull witnesses.
//!
//! Everything is computed over the rationals; there is no floating point in
//! any verdict.

pub mod ampleness;
pub mod commands;
pub mod distribution;
pub mod dsl;
pub mod error;
pub mod exterior;
pub mod fiber;
pub mod linalg;
pub mod obstruction;
pub mod random;
pub mod report;
pub mod scalar;
pub mod strata;

pub use error::{Error, Result};
pub use exterior::{lie_bracket, pair, KForm, MultiIndex, Point, Poly, VectorField, DIM};
pub use scalar::Rational;
