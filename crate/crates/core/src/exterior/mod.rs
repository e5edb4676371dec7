//! Exterior algebra and calculus on the fixed chart with coordinates `x1..x5`.

mod field;
mod form;
mod poly;

pub use field::{lie_bracket, pair, VectorField};
pub use form::{KForm, MultiIndex};
pub use poly::{Exponent, Poly};

use crate::scalar::Rational;

/// Chart dimension. Every formula in the crate is specific to 5 dimensions.
pub const DIM: usize = 5;

/// A point of the chart with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point([Rational; DIM]);

impl Point {
    pub fn new(coords: [Rational; DIM]) -> Self {
        Point(coords)
    }

    pub fn origin() -> Self {
        Point(std::array::from_fn(|_| Rational::from_integer(0.into())))
    }

    pub fn coords(&self) -> &[Rational; DIM] {
        &self.0
    }
}

pub(crate) fn default_names() -> [String; DIM] {
    std::array::from_fn(|i| format!("x{}", i + 1))
}
