use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use super::{Point, Poly, VectorField, DIM};
use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Strictly increasing tuple of coordinate indices, stored as a bit set
/// (bit `i-1` set for index `i`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(u8);

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);

    /// Builds the index from strictly increasing entries in `1..=5`.
    pub fn new(indices: &[usize]) -> Result<Self> {
        let mut bits = 0u8;
        let mut last = 0;
        for &i in indices {
            if !(1..=DIM).contains(&i) || i <= last {
                return Err(Error::Contract(format!(
                    "multi-index {indices:?} is not strictly increasing in 1..=5"
                )));
            }
            bits |= 1 << (i - 1);
            last = i;
        }
        Ok(MultiIndex(bits))
    }

    /// Canonical index for an arbitrary sequence together with the sign of
    /// the sorting permutation; `None` if an index repeats.
    pub fn sorted(indices: &[usize]) -> Option<(MultiIndex, i32)> {
        let mut bits = 0u8;
        let mut sign = 1;
        for (pos, &i) in indices.iter().enumerate() {
            debug_assert!((1..=DIM).contains(&i));
            if bits & (1 << (i - 1)) != 0 {
                return None;
            }
            bits |= 1 << (i - 1);
            // count earlier entries larger than i
            let inversions = indices[..pos].iter().filter(|&&j| j > i).count();
            if inversions % 2 == 1 {
                sign = -sign;
            }
        }
        Some((MultiIndex(bits), sign))
    }

    pub fn single(i: usize) -> Self {
        MultiIndex::new(&[i]).expect("valid coordinate index")
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << (i - 1)) != 0
    }

    pub fn indices(self) -> Vec<usize> {
        (1..=DIM).filter(|&i| self.contains(i)).collect()
    }

    /// All indices of a given length, in lexicographic order.
    pub fn all_of_degree(k: usize) -> Vec<MultiIndex> {
        let mut out: Vec<MultiIndex> = (0u8..32)
            .map(MultiIndex)
            .filter(|m| m.degree() == k)
            .collect();
        out.sort();
        out
    }

    /// Sign of `dx_self ∧ dx_other` relative to the sorted union, or `None`
    /// if they share an index.
    pub fn wedge_sign(self, other: MultiIndex) -> Option<(MultiIndex, i32)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut swaps = 0;
        for i in self.indices() {
            swaps += other.indices().iter().filter(|&&j| j < i).count();
        }
        let sign = if swaps % 2 == 0 { 1 } else { -1 };
        Some((MultiIndex(self.0 | other.0), sign))
    }

    /// Complementary index in `{1..5}`.
    pub fn complement(self) -> MultiIndex {
        MultiIndex(!self.0 & 0b1_1111)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Differential form of fixed degree with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KForm {
    degree: usize,
    terms: BTreeMap<MultiIndex, Poly>,
}

impl KForm {
    pub fn zero(degree: usize) -> Self {
        assert!(degree <= DIM, "form degree {degree} exceeds chart dimension");
        KForm {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// 0-form from a polynomial.
    pub fn function(f: Poly) -> Self {
        KForm::from_term(MultiIndex::EMPTY, f)
    }

    /// `dx_i`.
    pub fn dx(i: usize) -> Self {
        KForm::from_term(MultiIndex::single(i), Poly::one())
    }

    pub fn from_term(index: MultiIndex, coeff: Poly) -> Self {
        let mut f = KForm::zero(index.degree());
        f.add_term(index, coeff);
        f
    }

    /// Builds a form from `(indices, coefficient)` pairs; indices may be in any
    /// order and are normalized with sign.
    pub fn from_terms(degree: usize, terms: &[(&[usize], Poly)]) -> Result<Self> {
        let mut f = KForm::zero(degree);
        for (idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::Contract(format!(
                    "index {idx:?} has length {} in a {degree}-form",
                    idx.len()
                )));
            }
            if let Some((m, s)) = MultiIndex::sorted(idx) {
                let c = if s < 0 { -c } else { c.clone() };
                f.add_term(m, c);
            }
        }
        Ok(f)
    }

    fn add_term(&mut self, index: MultiIndex, coeff: Poly) {
        debug_assert_eq!(index.degree(), self.degree);
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(index).or_default();
        *entry += &coeff;
        if entry.is_zero() {
            self.terms.remove(&index);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, index: MultiIndex) -> Poly {
        self.terms.get(&index).cloned().unwrap_or_default()
    }

    /// Coefficients on all basis elements of this degree, lexicographic order.
    pub fn coefficient_vector(&self) -> Vec<Poly> {
        MultiIndex::all_of_degree(self.degree)
            .into_iter()
            .map(|m| self.coeff(m))
            .collect()
    }

    /// Multiplies every coefficient by a polynomial.
    pub fn scale(&self, f: &Poly) -> KForm {
        let mut out = KForm::zero(self.degree);
        for (m, c) in &self.terms {
            out.add_term(*m, c * f);
        }
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> KForm {
        self.scale(&Poly::constant(c.clone()))
    }

    pub fn try_add(&self, other: &KForm) -> Result<KForm> {
        if self.degree != other.degree {
            return Err(Error::Contract(format!(
                "cannot add forms of degree {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    /// Exterior product. Products of total degree above 5 vanish on the chart
    /// and are returned as the zero 5-form.
    pub fn wedge(&self, other: &KForm) -> KForm {
        let total = self.degree + other.degree;
        if total > DIM {
            return KForm::zero(DIM);
        }
        let mut out = KForm::zero(total);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, s)) = ma.wedge_sign(*mb) {
                    let c = ca * cb;
                    out.add_term(m, if s < 0 { -c } else { c });
                }
            }
        }
        out
    }

    /// Exterior derivative. `d` of a 5-form is the zero 5-form.
    pub fn d(&self) -> KForm {
        if self.degree == DIM {
            return KForm::zero(DIM);
        }
        let mut out = KForm::zero(self.degree + 1);
        for (m, c) in &self.terms {
            for j in 1..=DIM {
                let dc = c.derivative(j);
                if dc.is_zero() {
                    continue;
                }
                if let Some((mm, s)) = MultiIndex::single(j).wedge_sign(*m) {
                    out.add_term(mm, if s < 0 { -dc } else { dc });
                }
            }
        }
        out
    }

    /// Pointwise value; coefficients become constants.
    pub fn evaluate(&self, p: &Point) -> KForm {
        let mut out = KForm::zero(self.degree);
        for (m, c) in &self.terms {
            out.add_term(*m, Poly::constant(c.eval(p)));
        }
        out
    }

    /// Rational coefficients at `p`, lexicographic basis order.
    pub fn values_at(&self, p: &Point) -> Vec<Rational> {
        MultiIndex::all_of_degree(self.degree)
            .into_iter()
            .map(|m| self.terms.get(&m).map(|c| c.eval(p)).unwrap_or_else(Rational::zero))
            .collect()
    }

    /// Evaluates the form on `degree` vector fields:
    /// `Σ_I c_I · det[X_a(i_b)]`.
    pub fn apply(&self, fields: &[VectorField]) -> Result<Poly> {
        if fields.len() != self.degree {
            return Err(Error::Contract(format!(
                "a {}-form needs {} vector fields, got {}",
                self.degree,
                self.degree,
                fields.len()
            )));
        }
        let mut acc = Poly::zero();
        for (m, c) in &self.terms {
            let idx = m.indices();
            let minor = poly_det(&idx, fields);
            acc += &(c * &minor);
        }
        Ok(acc)
    }

    /// Same as [`KForm::apply`] on constant vectors.
    pub fn apply_vectors(&self, vectors: &[[Rational; DIM]], p: &Point) -> Result<Rational> {
        if vectors.len() != self.degree {
            return Err(Error::Contract(format!(
                "a {}-form needs {} vectors, got {}",
                self.degree,
                self.degree,
                vectors.len()
            )));
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let idx = m.indices();
            let k = idx.len();
            let mut mat = vec![Rational::zero(); k * k];
            for (a, v) in vectors.iter().enumerate() {
                for (b, &i) in idx.iter().enumerate() {
                    mat[a * k + b] = v[i - 1].clone();
                }
            }
            acc += c.eval(p) * crate::linalg::Matrix::from_vec(k, k, mat).det();
        }
        Ok(acc)
    }

    pub fn fmt_with(&self, names: &[String; DIM]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let basis: Vec<String> = m
                    .indices()
                    .iter()
                    .map(|&i| format!("d({})", names[i - 1]))
                    .collect();
                let basis = basis.join("^");
                let coeff = c.fmt_with(names);
                match (basis.is_empty(), c.as_constant()) {
                    (true, _) => format!("({coeff})"),
                    (false, Some(k)) if k == Rational::from_integer(1.into()) => basis,
                    _ => format!("({coeff})*{basis}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

fn poly_det(idx: &[usize], fields: &[VectorField]) -> Poly {
    let k = idx.len();
    if k == 0 {
        return Poly::one();
    }
    // Laplace expansion along the first field.
    let mut acc = Poly::zero();
    for (b, &i) in idx.iter().enumerate() {
        let entry = fields[0].component(i);
        if entry.is_zero() {
            continue;
        }
        let rest_idx: Vec<usize> = idx.iter().enumerate().filter(|(c, _)| *c != b).map(|(_, &v)| v).collect();
        let sub = poly_det(&rest_idx, &fields[1..]);
        let term = entry * &sub;
        if b % 2 == 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    acc
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&super::default_names()))
    }
}

impl Add for &KForm {
    type Output = KForm;
    /// Panics on a degree mismatch; use [`KForm::try_add`] for fallible addition.
    fn add(self, rhs: &KForm) -> KForm {
        self.try_add(rhs).expect("degree mismatch in form addition")
    }
}

impl Sub for &KForm {
    type Output = KForm;
    fn sub(self, rhs: &KForm) -> KForm {
        self + &(-rhs)
    }
}

impl Neg for &KForm {
    type Output = KForm;
    fn neg(self) -> KForm {
        let mut out = KForm::zero(self.degree);
        for (m, c) in &self.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Add for KForm {
    type Output = KForm;
    fn add(self, rhs: KForm) -> KForm {
        &self + &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn x(i: usize) -> Poly {
        Poly::var(i)
    }
    fn dx(i: usize) -> KForm {
        KForm::dx(i)
    }

    #[test]
    fn multi_index_ordering_and_signs() {
        assert_eq!(MultiIndex::all_of_degree(2).len(), 10);
        let pairs: Vec<Vec<usize>> = MultiIndex::all_of_degree(2).iter().map(|m| m.indices()).collect();
        assert_eq!(pairs[0], vec![1, 2]);
        assert_eq!(pairs[4], vec![2, 3]);
        assert_eq!(pairs[9], vec![4, 5]);
        assert_eq!(MultiIndex::sorted(&[2, 1]).unwrap().1, -1);
        assert_eq!(MultiIndex::sorted(&[3, 1, 2]).unwrap().1, 1);
        assert!(MultiIndex::sorted(&[2, 2]).is_none());
        assert!(MultiIndex::new(&[2, 1]).is_err());
        assert!(MultiIndex::new(&[0]).is_err());
    }

    #[test]
    fn wedge_examples() {
        assert!(dx(1).wedge(&dx(1)).is_zero());
        assert_eq!(dx(1).wedge(&dx(1)).degree(), 2);

        let lhs = (&dx(1) + &dx(2)).wedge(&dx(2));
        assert_eq!(lhs, dx(1).wedge(&dx(2)));

        let expected = -&dx(1).wedge(&dx(2)).wedge(&dx(3));
        assert_eq!(dx(2).wedge(&dx(1)).wedge(&dx(3)), expected);
    }

    #[test]
    fn wedge_overflow_is_zero_five_form() {
        let a = dx(1).wedge(&dx(2)).wedge(&dx(3));
        let b = dx(4).wedge(&dx(5)).wedge(&dx(1));
        let w = a.wedge(&b);
        assert!(w.is_zero());
        assert_eq!(w.degree(), 5);
    }

    #[test]
    fn derivative_examples() {
        // d(x1 dx2) = dx1 ^ dx2
        assert_eq!(dx(2).scale(&x(1)).d(), dx(1).wedge(&dx(2)));
        // d(d(x1^2 x3)) = 0
        let f = KForm::function(&x(1).pow(2) * &x(3));
        assert!(f.d().d().is_zero());
        assert_eq!(f.d().d().degree(), 2);
        // d(x4^2 dx1) = 2 x4 dx4 ^ dx1
        let expected = dx(4).wedge(&dx(1)).scale(&x(4).scale(&int(2)));
        assert_eq!(dx(1).scale(&x(4).pow(2)).d(), expected);
        // top degree
        let vol = dx(1).wedge(&dx(2)).wedge(&dx(3)).wedge(&dx(4)).wedge(&dx(5));
        assert!(vol.scale(&x(1)).d().is_zero());
    }

    #[test]
    fn evaluate_examples() {
        let p = Point::new([int(3), int(0), int(0), int(0), int(0)]);
        assert_eq!(dx(2).scale(&x(1)).evaluate(&p), dx(2).scale_rational(&int(3)));
        let q = Point::new([rat(1, 7), int(2), int(-1), int(5), int(0)]);
        let c = dx(1).wedge(&dx(2));
        assert_eq!(c.evaluate(&q), c);
        let p4 = Point::new([int(0), int(0), int(0), int(2), int(0)]);
        let w = dx(1).wedge(&dx(5)).scale(&x(4).pow(2));
        assert_eq!(w.evaluate(&p4), dx(1).wedge(&dx(5)).scale_rational(&int(4)));
    }

    #[test]
    fn apply_two_form_to_fields() {
        let e = |i: usize| VectorField::coordinate(i);
        let w = dx(1).wedge(&dx(2));
        assert_eq!(w.apply(&[e(1), e(2)]).unwrap(), Poly::one());
        assert_eq!(w.apply(&[e(2), e(1)]).unwrap(), Poly::from_int(-1));
        assert!(w.apply(&[e(1)]).is_err());
    }

    #[test]
    fn adding_mismatched_degrees_fails() {
        assert!(dx(1).try_add(&dx(1).wedge(&dx(2))).is_err());
    }

    #[test]
    fn from_terms_normalizes() {
        let f = KForm::from_terms(2, &[(&[2, 1], Poly::one()), (&[3, 3], Poly::one())]).unwrap();
        assert_eq!(f, -&dx(1).wedge(&dx(2)));
    }
}
