use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::{KForm, Point, Poly, DIM};
use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Vector field `Σ X_i ∂_i` with polynomial components.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VectorField {
    components: [Poly; DIM],
}

impl VectorField {
    pub fn new(components: [Poly; DIM]) -> Self {
        VectorField { components }
    }

    pub fn zero() -> Self {
        VectorField::default()
    }

    /// `∂_i`.
    pub fn coordinate(i: usize) -> Self {
        let mut v = VectorField::zero();
        v.components[i - 1] = Poly::one();
        v
    }

    /// Component `i` in `1..=5`.
    pub fn component(&self, i: usize) -> &Poly {
        &self.components[i - 1]
    }

    pub fn components(&self) -> &[Poly; DIM] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn scale(&self, f: &Poly) -> VectorField {
        VectorField::new(std::array::from_fn(|k| &self.components[k] * f))
    }

    /// Directional derivative `X(f) = Σ X_j ∂_j f`.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for (j, xj) in self.components.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            let df = f.derivative(j + 1);
            if !df.is_zero() {
                acc += &(xj * &df);
            }
        }
        acc
    }

    pub fn eval(&self, p: &Point) -> [Rational; DIM] {
        std::array::from_fn(|k| self.components[k].eval(p))
    }

    pub fn fmt_with(&self, names: &[String; DIM]) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .zip(names.iter())
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| match c.as_constant() {
                Some(k) if k == Rational::from_integer(1.into()) => format!("d({n})"),
                _ => format!("({})*d({n})", c.fmt_with(names)),
            })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// `[X, Y]_i = Σ_j (X_j ∂_j Y_i − Y_j ∂_j X_i)`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> VectorField {
    VectorField::new(std::array::from_fn(|i| {
        &x.apply(&y.components[i]) - &y.apply(&x.components[i])
    }))
}

/// `α(X)` for a 1-form `α`.
pub fn pair(alpha: &KForm, x: &VectorField) -> Result<Poly> {
    if alpha.degree() != 1 {
        return Err(Error::Contract(format!(
            "pairing needs a 1-form, got degree {}",
            alpha.degree()
        )));
    }
    let mut acc = Poly::zero();
    for (m, c) in alpha.terms() {
        let i = m.indices()[0];
        acc += &(c * x.component(i));
    }
    Ok(acc)
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&super::default_names()))
    }
}

impl Add for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        VectorField::new(std::array::from_fn(|k| &self.components[k] + &rhs.components[k]))
    }
}

impl Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        VectorField::new(std::array::from_fn(|k| &self.components[k] - &rhs.components[k]))
    }
}

impl Neg for &VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        VectorField::new(std::array::from_fn(|k| -&self.components[k]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn x(i: usize) -> Poly {
        Poly::var(i)
    }
    fn e(i: usize) -> VectorField {
        VectorField::coordinate(i)
    }

    fn hilbert_cartan_y() -> VectorField {
        VectorField::new([Poly::one(), x(3), x(4), Poly::zero(), x(4).pow(2)])
    }

    #[test]
    fn bracket_examples() {
        // [∂1, x1 ∂2] = ∂2
        assert_eq!(lie_bracket(&e(1), &e(2).scale(&x(1))), e(2));
        let y = hilbert_cartan_y();
        assert!(lie_bracket(&y, &y).is_zero());
        // [∂4, ∂1 + x3∂2 + x4∂3 + x4²∂5] = ∂3 + 2 x4 ∂5
        let expected = &e(3) + &e(5).scale(&x(4).scale(&int(2)));
        assert_eq!(lie_bracket(&e(4), &y), expected);
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pair(&KForm::dx(3), &e(3)).unwrap(), Poly::one());
        let alpha = &KForm::dx(2) - &KForm::dx(1).scale(&x(3));
        let field = &e(1) + &e(2).scale(&x(3));
        assert!(pair(&alpha, &field).unwrap().is_zero());
        assert!(pair(&KForm::dx(1), &e(2)).unwrap().is_zero());
        assert!(pair(&KForm::dx(1).wedge(&KForm::dx(2)), &e(1)).is_err());
    }

    #[test]
    fn apply_is_directional_derivative() {
        let f = &x(1).pow(2) * &x(2);
        let v = e(1).scale(&x(3));
        assert_eq!(v.apply(&f), &(&x(1) * &x(2)).scale(&int(2)) * &x(3));
    }
}
