use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::{Point, DIM};
use crate::scalar::{int, Rational};

/// Exponent vector of a monomial in `x1..x5`.
pub type Exponent = [u32; DIM];

/// Multivariate polynomial over the rationals in the chart coordinates.
///
/// Terms are kept in a `BTreeMap` so iteration order (and therefore every
/// printed or serialized form) is deterministic. Zero coefficients are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Exponent, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::monomial(c, [0; DIM])
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(int(n))
    }

    /// The coordinate function `x_i` for `i` in `1..=5`.
    pub fn var(i: usize) -> Self {
        assert!((1..=DIM).contains(&i), "coordinate index {i} out of range");
        let mut e = [0; DIM];
        e[i - 1] = 1;
        Poly::monomial(Rational::one(), e)
    }

    pub fn monomial(c: Rational, exponent: Exponent) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant value if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&[0; DIM]).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Partial derivative with respect to `x_i`, `i` in `1..=5`.
    pub fn derivative(&self, i: usize) -> Poly {
        let k = i - 1;
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if e[k] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[k] -= 1;
            out.add_term(e2, c * int(i64::from(e[k])));
        }
        out
    }

    pub fn eval(&self, p: &Point) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in p.coords().iter().zip(e.iter()) {
                if k > 0 {
                    term *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += term;
        }
        acc
    }

    /// Writes the polynomial using the given coordinate names.
    pub fn fmt_with(&self, names: &[String; DIM]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        // Highest degree first reads more naturally.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (idx, (e, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            let is_const = e.iter().all(|&k| k == 0);
            if !mag.is_one() || is_const {
                factors.push(mag.to_string());
            }
            for (name, &k) in names.iter().zip(e.iter()) {
                match k {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{k}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&super::default_names()))
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        let mut out = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = *ea;
                for (x, y) in e.iter_mut().zip(eb.iter()) {
                    *x += *y;
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn x(i: usize) -> Poly {
        Poly::var(i)
    }

    #[test]
    fn no_zero_terms_survive() {
        let p = &x(1) - &x(1);
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
        assert!(Poly::constant(rat(0, 5)).is_zero());
    }

    #[test]
    fn product_and_power() {
        let p = &x(1) + &Poly::one();
        let sq = p.pow(2);
        let expected = &(&x(1) * &x(1)) + &(&x(1).scale(&int(2)) + &Poly::one());
        assert_eq!(sq, expected);
        assert_eq!(p.pow(0), Poly::one());
        assert_eq!(sq.degree(), Some(2));
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn derivative_and_eval() {
        // d/dx3 (x1^2 x3^3) = 3 x1^2 x3^2
        let p = Poly::monomial(int(1), [2, 0, 3, 0, 0]);
        assert_eq!(p.derivative(3), Poly::monomial(int(3), [2, 0, 2, 0, 0]));
        assert!(p.derivative(2).is_zero());
        let pt = Point::new([int(2), int(0), rat(1, 2), int(0), int(0)]);
        assert_eq!(p.eval(&pt), rat(1, 2));
    }

    #[test]
    fn constants() {
        assert_eq!(Poly::from_int(3).as_constant(), Some(int(3)));
        assert_eq!(Poly::zero().as_constant(), Some(int(0)));
        assert_eq!(x(2).as_constant(), None);
    }

    #[test]
    fn display() {
        let p = &(&x(4).pow(2).scale(&rat(1, 2)) - &x(3)) + &Poly::from_int(-2);
        assert_eq!(p.to_string(), "1/2*x4^2 - x3 - 2");
    }
}
