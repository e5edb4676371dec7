//! Seeded random inputs for sweeps and property checks.
//!
//! Everything is driven by a `ChaCha8Rng` so that a seed fully determines
//! the generated data on every platform.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exterior::{KForm, MultiIndex, Point, Poly, VectorField, DIM};
use crate::scalar::{rat, Rational};
use crate::strata::{JetFiberPoint35, JetFiberPointCartan, MinorTable2, MinorTable3};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational with numerator in `-5..=5` and denominator in `1..=4`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

/// Small rational that is zero with probability `zero_prob`.
pub fn sparse_rational<R: Rng>(rng: &mut R, zero_prob: f64) -> Rational {
    if rng.gen_bool(zero_prob) {
        rat(0, 1)
    } else {
        small_rational(rng)
    }
}

pub fn point<R: Rng>(rng: &mut R) -> Point {
    Point::new(std::array::from_fn(|_| small_rational(rng)))
}

/// Polynomial of total degree at most `max_degree` with up to `max_terms` terms.
pub fn poly<R: Rng>(rng: &mut R, max_degree: u32, max_terms: usize) -> Poly {
    let n = rng.gen_range(0..=max_terms);
    let mut p = Poly::zero();
    for _ in 0..n {
        let mut e = [0u32; DIM];
        let deg = rng.gen_range(0..=max_degree);
        for _ in 0..deg {
            e[rng.gen_range(0..DIM)] += 1;
        }
        p += &Poly::monomial(small_rational(rng), e);
    }
    p
}

pub fn form<R: Rng>(rng: &mut R, degree: usize, max_degree: u32, max_terms: usize) -> KForm {
    let basis = MultiIndex::all_of_degree(degree);
    let mut f = KForm::zero(degree);
    let n = rng.gen_range(1..=basis.len().min(3));
    for _ in 0..n {
        let m = basis[rng.gen_range(0..basis.len())];
        f = &f + &KForm::from_term(m, poly(rng, max_degree, max_terms));
    }
    f
}

pub fn field<R: Rng>(rng: &mut R, max_degree: u32, max_terms: usize) -> VectorField {
    VectorField::new(std::array::from_fn(|_| {
        if rng.gen_bool(0.4) {
            Poly::zero()
        } else {
            poly(rng, max_degree, max_terms)
        }
    }))
}

/// 1-form with constant rational coefficients.
pub fn constant_one_form<R: Rng>(rng: &mut R) -> KForm {
    let mut f = KForm::zero(1);
    for i in 1..=DIM {
        f = &f + &KForm::dx(i).scale_rational(&sparse_rational(rng, 0.3));
    }
    f
}

/// 2-form with constant rational coefficients.
pub fn constant_two_form<R: Rng>(rng: &mut R) -> KForm {
    let mut f = KForm::zero(2);
    for m in MultiIndex::all_of_degree(2) {
        f = &f + &KForm::from_term(m, Poly::constant(sparse_rational(rng, 0.3)));
    }
    f
}

fn row<R: Rng, const N: usize>(rng: &mut R, zero_prob: f64) -> [Rational; N] {
    std::array::from_fn(|_| sparse_rational(rng, zero_prob))
}

pub fn fiber35<R: Rng>(rng: &mut R) -> JetFiberPoint35 {
    JetFiberPoint35::new([row(rng, 0.3), row(rng, 0.3)], [row(rng, 0.3), row(rng, 0.3)])
}

pub fn fiber_cartan<R: Rng>(rng: &mut R) -> JetFiberPointCartan {
    JetFiberPointCartan::new(
        [row(rng, 0.3), row(rng, 0.3), row(rng, 0.3)],
        [row(rng, 0.3), row(rng, 0.3), row(rng, 0.3)],
    )
}

/// Minor table with independently drawn, often zero, entries. Such tables
/// need not come from any 2×5 matrix.
pub fn free_table2<R: Rng>(rng: &mut R) -> MinorTable2 {
    let zero_prob = rng.gen_range(0.2..0.9);
    MinorTable2::from_values(row(rng, zero_prob))
}

pub fn free_table3<R: Rng>(rng: &mut R) -> MinorTable3 {
    let zero_prob = rng.gen_range(0.2..0.9);
    MinorTable3::from_values(row(rng, zero_prob))
}
