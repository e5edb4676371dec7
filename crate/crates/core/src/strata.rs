//! Exact computations on jet-fiber points: minor tables, the coefficients of
//! `α₁∧α₂∧ω` and `α₁∧α₂∧α₃∧ω`, strata membership and the linear systems
//! cut out on principal subspaces.
//!
//! A 2-form row `z` is stored in the order
//! `(12, 13, 14, 15, 23, 24, 25, 34, 35, 45)`; a 3-index table in the order
//! `(123, 124, 125, 134, 135, 145, 234, 235, 245, 345)`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exterior::{MultiIndex, DIM};
use crate::linalg::Matrix;
use crate::scalar::Rational;

/// Index pairs `(i, j)`, `i < j`, in storage order.
pub const PAIRS: [(usize, usize); 10] = [
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 3),
    (2, 4),
    (2, 5),
    (3, 4),
    (3, 5),
    (4, 5),
];

pub const TRIPLES: [(usize, usize, usize); 10] = [
    (1, 2, 3),
    (1, 2, 4),
    (1, 2, 5),
    (1, 3, 4),
    (1, 3, 5),
    (1, 4, 5),
    (2, 3, 4),
    (2, 3, 5),
    (2, 4, 5),
    (3, 4, 5),
];

pub type Row5 = [Rational; DIM];
pub type Row10 = [Rational; 10];

/// Storage position of the pair `{i, j}` (any order, `i ≠ j`).
pub fn pair_index(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    PAIRS.iter().position(|&p| p == (a, b)).expect("valid index pair")
}

fn triple_index(i: usize, j: usize, k: usize) -> usize {
    TRIPLES.iter().position(|&t| t == (i, j, k)).expect("valid index triple")
}

fn perm_sign(seq: &[usize]) -> Rational {
    match MultiIndex::sorted(seq) {
        Some((_, s)) if s > 0 => Rational::one(),
        Some(_) => -Rational::one(),
        None => Rational::zero(),
    }
}

fn zero_row<const N: usize>() -> [Rational; N] {
    std::array::from_fn(|_| Rational::zero())
}

/// `A_ij`, the 2×2 minors of a 2×5 matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinorTable2([Rational; 10]);

impl MinorTable2 {
    pub fn from_values(values: Row10) -> Self {
        MinorTable2(values)
    }

    /// `A_ij` with `A_ji = −A_ij` and `A_ii = 0`.
    pub fn get(&self, i: usize, j: usize) -> Rational {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => Rational::zero(),
            std::cmp::Ordering::Less => self.0[pair_index(i, j)].clone(),
            std::cmp::Ordering::Greater => -self.0[pair_index(i, j)].clone(),
        }
    }

    pub fn values(&self) -> &Row10 {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

/// `A_ijk`, the 3×3 minors of a 3×5 matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinorTable3([Rational; 10]);

impl MinorTable3 {
    pub fn from_values(values: Row10) -> Self {
        MinorTable3(values)
    }

    /// `A_ijk` for strictly increasing indices.
    pub fn get(&self, i: usize, j: usize, k: usize) -> Rational {
        self.0[triple_index(i, j, k)].clone()
    }

    pub fn values(&self) -> &Row10 {
        &self.0
    }
}

pub fn minors2(a: &[Row5; 2]) -> MinorTable2 {
    MinorTable2(std::array::from_fn(|n| {
        let (i, j) = PAIRS[n];
        &a[0][i - 1] * &a[1][j - 1] - &a[0][j - 1] * &a[1][i - 1]
    }))
}

pub fn minors3(a: &[Row5; 3]) -> MinorTable3 {
    MinorTable3(std::array::from_fn(|n| {
        let (i, j, k) = TRIPLES[n];
        let cols = [i - 1, j - 1, k - 1];
        let m: Vec<Rational> = a.iter().flat_map(|row| cols.iter().map(|&c| row[c].clone())).collect();
        Matrix::from_vec(3, 3, m).det()
    }))
}

/// Coefficients `B_r` of `α₁∧α₂∧ω = Σ_r B_r dx₁∧…∧(no dx_r)∧…∧dx₅`.
///
/// `B_r` sums `± A_ij z_kl` over the ways of splitting `{1..5}∖{r}` into
/// pairs `i<j`, `k<l`, with the sign of the permutation `(i, j, k, l)`.
pub fn b_coeffs(a: &MinorTable2, z: &Row10) -> Row5 {
    std::array::from_fn(|r0| {
        let r = r0 + 1;
        let mut acc = Rational::zero();
        for &(i, j) in &PAIRS {
            if i == r || j == r {
                continue;
            }
            let rest: Vec<usize> = (1..=DIM).filter(|&m| m != r && m != i && m != j).collect();
            let (k, l) = (rest[0], rest[1]);
            let aij = a.get(i, j);
            if aij.is_zero() {
                continue;
            }
            acc += perm_sign(&[i, j, k, l]) * aij * &z[pair_index(k, l)];
        }
        acc
    })
}

/// `F_ij = B¹_i B²_j − B¹_j B²_i`, pairs in storage order.
pub fn f_minors(b1: &Row5, b2: &Row5) -> Row10 {
    std::array::from_fn(|n| {
        let (i, j) = PAIRS[n];
        &b1[i - 1] * &b2[j - 1] - &b1[j - 1] * &b2[i - 1]
    })
}

/// Coefficient of `α₁∧α₂∧α₃∧ω` on `dx₁∧…∧dx₅`.
pub fn five_form(a: &MinorTable3, z: &Row10) -> Rational {
    let mut acc = Rational::zero();
    for &(i, j, k) in &TRIPLES {
        let aijk = a.get(i, j, k);
        if aijk.is_zero() {
            continue;
        }
        let rest: Vec<usize> = (1..=DIM).filter(|&m| m != i && m != j && m != k).collect();
        acc += perm_sign(&[i, j, k, rest[0], rest[1]]) * aijk * &z[pair_index(rest[0], rest[1])];
    }
    acc
}

/// Fiber point of the (3,5) relation: coefficients of `α₁, α₂` and `ω₁, ω₂`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JetFiberPoint35 {
    pub a: [Row5; 2],
    pub z: [Row10; 2],
}

/// Fiber point of the Cartan relation: `α₁, α₂, α₃` and `ω₁, ω₂, ω₃`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JetFiberPointCartan {
    pub a: [Row5; 3],
    pub z: [Row10; 3],
}

impl JetFiberPoint35 {
    pub fn new(a: [Row5; 2], z: [Row10; 2]) -> Self {
        JetFiberPoint35 { a, z }
    }

    pub fn minors(&self) -> MinorTable2 {
        minors2(&self.a)
    }

    pub fn b_rows(&self) -> [Row5; 2] {
        let a = self.minors();
        [b_coeffs(&a, &self.z[0]), b_coeffs(&a, &self.z[1])]
    }

    pub fn f_values(&self) -> Row10 {
        let [b1, b2] = self.b_rows();
        f_minors(&b1, &b2)
    }
}

impl JetFiberPointCartan {
    pub fn new(a: [Row5; 3], z: [Row10; 3]) -> Self {
        JetFiberPointCartan { a, z }
    }

    pub fn minors(&self) -> MinorTable3 {
        minors3(&self.a)
    }

    pub fn five_forms(&self) -> [Rational; 3] {
        let a = self.minors();
        std::array::from_fn(|i| five_form(&a, &self.z[i]))
    }
}

/// The two 4-forms `α₁∧α₂∧ω₁`, `α₁∧α₂∧ω₂` are linearly dependent.
pub fn in_s_tilde(p: &JetFiberPoint35) -> bool {
    p.f_values().iter().all(Zero::is_zero)
}

/// All three 5-forms `α₁∧α₂∧α₃∧ω_i` vanish.
pub fn in_s1(p: &JetFiberPointCartan) -> bool {
    p.five_forms().iter().all(Zero::is_zero)
}

/// Stratum of `Z` determined by which of the three 5-forms are nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ULabel {
    S1,
    U3,
    U2(usize, usize),
    U1(usize),
}

impl ULabel {
    /// Indices `i` whose 5-form is nonzero.
    pub fn pivots(self) -> Vec<usize> {
        match self {
            ULabel::S1 => vec![],
            ULabel::U3 => vec![1, 2, 3],
            ULabel::U2(i, j) => vec![i, j],
            ULabel::U1(i) => vec![i],
        }
    }
}

impl fmt::Display for ULabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ULabel::S1 => write!(f, "S1"),
            ULabel::U3 => write!(f, "U3_123"),
            ULabel::U2(i, j) => write!(f, "U2_{i}{j}"),
            ULabel::U1(i) => write!(f, "U1_{i}"),
        }
    }
}

pub fn classify_u(p: &JetFiberPointCartan) -> ULabel {
    let nz: Vec<usize> = p
        .five_forms()
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, _)| i + 1)
        .collect();
    match nz.as_slice() {
        [] => ULabel::S1,
        [i] => ULabel::U1(*i),
        [i, j] => ULabel::U2(*i, *j),
        _ => ULabel::U3,
    }
}

/// `ω̃_j = ω_j − g_j ω_pivot` with `g_j` the ratio of 5-forms, for the two
/// indices `j ≠ pivot` in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub pivot: usize,
    pub others: [usize; 2],
    pub g: [Rational; 2],
    pub reduced: [Row10; 2],
}

pub fn reduce_omegas(p: &JetFiberPointCartan, pivot: usize) -> Result<Reduction> {
    if !(1..=3).contains(&pivot) {
        return Err(Error::Contract(format!("pivot must be 1, 2 or 3, got {pivot}")));
    }
    let forms = p.five_forms();
    let denom = &forms[pivot - 1];
    if denom.is_zero() {
        return Err(Error::Domain(format!("5-form of omega{pivot} vanishes; it cannot be a pivot")));
    }
    let others: Vec<usize> = (1..=3).filter(|&j| j != pivot).collect();
    let others = [others[0], others[1]];
    let g: [Rational; 2] = std::array::from_fn(|n| &forms[others[n] - 1] / denom);
    let reduced = std::array::from_fn(|n| {
        std::array::from_fn(|m| &p.z[others[n] - 1][m] - &g[n] * &p.z[pivot - 1][m])
    });
    Ok(Reduction {
        pivot,
        others,
        g,
        reduced,
    })
}

impl Reduction {
    /// `(α₁, α₂; ω̃, ω̃')` as a (3,5) fiber point.
    pub fn as_fiber35(&self, p: &JetFiberPointCartan) -> JetFiberPoint35 {
        JetFiberPoint35::new([p.a[0].clone(), p.a[1].clone()], self.reduced.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S2Membership {
    pub label: ULabel,
    /// `(i, p ∈ S₂^i)` for each pivot `i` of the stratum.
    pub parts: Vec<(usize, bool)>,
    pub member: bool,
}

/// Membership in `S₂`: on each stratum, the intersection of `S₂^i` over the
/// indices `i` whose 5-form is nonzero. `S₂^i` asks whether the reduced pair
/// is dependent against the first two α's.
pub fn in_s2(p: &JetFiberPointCartan) -> Result<S2Membership> {
    let label = classify_u(p);
    if label == ULabel::S1 {
        return Err(Error::Domain("S2 is only defined off S1".into()));
    }
    let mut parts = Vec::new();
    for i in label.pivots() {
        let red = reduce_omegas(p, i)?;
        parts.push((i, in_s_tilde(&red.as_fiber35(p))));
    }
    Ok(S2Membership {
        label,
        member: parts.iter().all(|(_, m)| *m),
        parts,
    })
}

fn check_direction(d: usize) -> Result<()> {
    if !(1..=DIM).contains(&d) {
        return Err(Error::Contract(format!("direction must be in 1..=5, got {d}")));
    }
    Ok(())
}

/// The coordinates `l ≠ d` in increasing order; the free variables on the
/// principal subspace of direction `d` are `z_{dl}` for these `l`.
pub fn free_partners(d: usize) -> [usize; 4] {
    let v: Vec<usize> = (1..=DIM).filter(|&l| l != d).collect();
    [v[0], v[1], v[2], v[3]]
}

/// Storage positions of the free variables `z_{dl}`.
pub fn free_positions(d: usize) -> [usize; 4] {
    free_partners(d).map(|l| pair_index(d, l))
}

fn with_free_zeroed(z: &Row10, d: usize) -> Row10 {
    let mut z = z.clone();
    for pos in free_positions(d) {
        z[pos] = Rational::zero();
    }
    z
}

fn unit(pos: usize) -> Row10 {
    let mut z = zero_row();
    z[pos] = Rational::one();
    z
}

/// `α₁∧α₂∧α₃∧ω_i = 0`, `i = 1, 2, 3`, restricted to the principal subspace
/// of direction `d`: a 3×12 block-diagonal system `C z_free = rhs` in the
/// variables `(z¹_{dl}, z²_{dl}, z³_{dl})`.
pub fn sigma1_principal_system(a: &MinorTable3, d: usize, z: &[Row10; 3]) -> Result<(Matrix, Vec<Rational>)> {
    check_direction(d)?;
    let block: Vec<Rational> = free_positions(d).iter().map(|&pos| five_form(a, &unit(pos))).collect();
    let mut c = Matrix::zeros(3, 12);
    let mut rhs = Vec::new();
    for i in 0..3 {
        for (m, v) in block.iter().enumerate() {
            c[(i, 4 * i + m)] = v.clone();
        }
        rhs.push(-five_form(a, &with_free_zeroed(&z[i], d)));
    }
    Ok((c, rhs))
}

/// Linear structure of `B^i_r` on a principal subspace: `B^i_r = L_r·z^i_free + C^i_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalB {
    pub direction: usize,
    /// `L_r` (independent of `i`); `L_d = 0`.
    pub linear: [[Rational; 4]; DIM],
    /// `C^i_r`, the value of `B^i_r` with the free variables set to zero.
    pub constant: [Row5; 2],
}

pub fn principal_b(a: &MinorTable2, d: usize, z: &[Row10; 2]) -> Result<PrincipalB> {
    check_direction(d)?;
    let units: Vec<Row5> = free_positions(d).iter().map(|&pos| b_coeffs(a, &unit(pos))).collect();
    let linear = std::array::from_fn(|r| std::array::from_fn(|m| units[m][r].clone()));
    let constant = std::array::from_fn(|i| b_coeffs(a, &with_free_zeroed(&z[i], d)));
    Ok(PrincipalB {
        direction: d,
        linear,
        constant,
    })
}

impl PrincipalB {
    /// `(B¹_d, B²_d)`; constant on the principal subspace.
    pub fn b_column(&self) -> [Rational; 2] {
        let d = self.direction - 1;
        [self.constant[0][d].clone(), self.constant[1][d].clone()]
    }
}

/// The system `F_dk = 0`, `k ≠ d`, on the principal subspace of direction
/// `d` when `(B¹_d, B²_d) ≠ 0`: rows `k` in increasing order, columns
/// `(z¹_{dl}, z²_{dl})`. Written as `M z = rhs`, so `M` is the negated
/// linear part of `F_dk` and `rhs` its constant part.
pub fn case1_system(a: &MinorTable2, d: usize, z: &[Row10; 2]) -> Result<(Matrix, Vec<Rational>)> {
    let pb = principal_b(a, d, z)?;
    let [b1, b2] = pb.b_column();
    let mut m = Matrix::zeros(4, 8);
    let mut rhs = Vec::new();
    for (row, k) in free_partners(d).into_iter().enumerate() {
        let lk = &pb.linear[k - 1];
        for c in 0..4 {
            m[(row, c)] = &b2 * &lk[c];
            m[(row, 4 + c)] = -(&b1 * &lk[c]);
        }
        let (c1, c2) = (&pb.constant[0], &pb.constant[1]);
        rhs.push(&b1 * &c2[k - 1] - &b2 * &c1[k - 1]);
    }
    Ok((m, rhs))
}

/// Coefficient matrix of the direction-1 Case-1 system for a given minor
/// table and B-column `(B¹₁, B²₁)`.
pub fn case1_matrix(a: &MinorTable2, b_column: &[Rational; 2]) -> Matrix {
    let units: Vec<Row5> = free_positions(1).iter().map(|&pos| b_coeffs(a, &unit(pos))).collect();
    let [b1, b2] = b_column;
    let mut m = Matrix::zeros(4, 8);
    for (row, k) in free_partners(1).into_iter().enumerate() {
        for c in 0..4 {
            let l = &units[c][k - 1];
            m[(row, c)] = b2 * l;
            m[(row, 4 + c)] = -(b1 * l);
        }
    }
    m
}

pub fn exact_rank(m: &Matrix) -> usize {
    m.rank()
}

/// Data for the coordinate swap `(1 d)`: columns of `a` exchanged and
/// `z_{jk} ↦ ±z_{σj σk}` with the sign of reordering.
pub fn swap_row5(row: &Row5, d: usize) -> Row5 {
    let mut r = row.clone();
    r.swap(0, d - 1);
    r
}

pub fn swap_row10(row: &Row10, d: usize) -> Row10 {
    let s = |i: usize| match i {
        1 => d,
        _ if i == d => 1,
        _ => i,
    };
    let mut out = zero_row();
    for (n, &(j, k)) in PAIRS.iter().enumerate() {
        let (sj, sk) = (s(j), s(k));
        let v = row[n].clone();
        out[pair_index(sj, sk)] = if sj < sk { v } else { -v };
    }
    out
}

impl JetFiberPoint35 {
    pub fn swapped(&self, d: usize) -> JetFiberPoint35 {
        JetFiberPoint35::new(self.a.clone().map(|r| swap_row5(&r, d)), self.z.clone().map(|r| swap_row10(&r, d)))
    }
}

impl JetFiberPointCartan {
    pub fn swapped(&self, d: usize) -> JetFiberPointCartan {
        JetFiberPointCartan::new(self.a.clone().map(|r| swap_row5(&r, d)), self.z.clone().map(|r| swap_row10(&r, d)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{KForm, Poly};
    use crate::random;
    use crate::scalar::{int, rat};
    use rand::Rng;

    fn e(i: usize) -> Row5 {
        std::array::from_fn(|k| if k + 1 == i { int(1) } else { int(0) })
    }

    fn z_with(entries: &[(usize, usize, i64)]) -> Row10 {
        let mut z = zero_row();
        for &(i, j, v) in entries {
            z[pair_index(i, j)] = int(v);
        }
        z
    }

    fn table2(entries: &[(usize, usize, i64)]) -> MinorTable2 {
        MinorTable2::from_values(z_with(entries))
    }

    fn one_form(row: &Row5) -> KForm {
        let mut f = KForm::zero(1);
        for i in 1..=DIM {
            f = &f + &KForm::dx(i).scale_rational(&row[i - 1]);
        }
        f
    }

    fn two_form(z: &Row10) -> KForm {
        let mut f = KForm::zero(2);
        for (n, &(i, j)) in PAIRS.iter().enumerate() {
            f = &f + &KForm::dx(i).wedge(&KForm::dx(j)).scale_rational(&z[n]);
        }
        f
    }

    /// Coefficients of a 4-form on `dx₁∧…∧(no dx_r)∧…∧dx₅`.
    fn four_form_coeffs(f: &KForm) -> Row5 {
        std::array::from_fn(|r0| {
            let idx: Vec<usize> = (1..=DIM).filter(|&m| m != r0 + 1).collect();
            f.coeff(MultiIndex::new(&idx).unwrap()).as_constant().unwrap()
        })
    }

    #[test]
    fn minor_examples() {
        let t = minors2(&[e(1), e(2)]);
        assert_eq!(t, table2(&[(1, 2, 1)]));
        let mut r = e(1);
        r[1] = int(1);
        assert_eq!(minors2(&[r, e(2)]), table2(&[(1, 2, 1)]));
        assert_eq!(t.get(2, 1), int(-1));

        let t3 = minors3(&[e(1), e(2), e(3)]);
        assert_eq!(t3.get(1, 2, 3), int(1));
        assert!(t3.values().iter().skip(1).all(Zero::is_zero));
        assert!(minors3(&[e(1), e(1), e(3)]).values().iter().all(Zero::is_zero));
    }

    #[test]
    fn minors_match_brute_force() {
        let mut rng = random::seeded(1);
        for _ in 0..50 {
            let p = random::fiber_cartan(&mut rng);
            let t = p.minors();
            for &(i, j, k) in &TRIPLES {
                let m = Matrix::from_rows(&p.a.iter().map(|r| vec![r[i - 1].clone(), r[j - 1].clone(), r[k - 1].clone()]).collect::<Vec<_>>());
                assert_eq!(t.get(i, j, k), m.det());
            }
            let two = [p.a[0].clone(), p.a[1].clone()];
            let t2 = minors2(&two);
            for &(i, j) in &PAIRS {
                let m = Matrix::from_rows(&[vec![two[0][i - 1].clone(), two[0][j - 1].clone()], vec![two[1][i - 1].clone(), two[1][j - 1].clone()]]);
                assert_eq!(t2.get(i, j), m.det());
            }
        }
    }

    #[test]
    fn b_coeff_examples() {
        let b = b_coeffs(&table2(&[(1, 2, 1)]), &z_with(&[(4, 5, 1)]));
        assert_eq!(b, [int(0), int(0), int(1), int(0), int(0)]);
        let b = b_coeffs(&table2(&[(2, 3, 1), (4, 5, 2)]), &zero_row());
        assert!(b.iter().all(Zero::is_zero));
    }

    #[test]
    fn b_coeffs_match_symbolic_wedge() {
        let mut rng = random::seeded(2);
        for _ in 0..200 {
            let p = random::fiber35(&mut rng);
            let a12 = one_form(&p.a[0]).wedge(&one_form(&p.a[1]));
            for i in 0..2 {
                let w = a12.wedge(&two_form(&p.z[i]));
                assert_eq!(p.b_rows()[i], four_form_coeffs(&w));
            }
        }
    }

    #[test]
    fn f_minor_examples() {
        let b1 = e(1);
        let b2 = e(2);
        let f = f_minors(&b1, &b2);
        assert_eq!(f[0], int(1));
        assert!(f[1..].iter().all(Zero::is_zero));
        let b1 = [int(1), rat(1, 2), int(-3), int(0), int(2)];
        let b2 = b1.clone().map(|v| v * int(7));
        assert!(f_minors(&b1, &b2).iter().all(Zero::is_zero));
    }

    #[test]
    fn s_tilde_examples() {
        let z = z_with(&[(4, 5, 1), (1, 3, 2)]);
        assert!(in_s_tilde(&JetFiberPoint35::new([e(1), e(2)], [z.clone(), z])));
        // B¹ = e₃ and B² = e₁ give F₁₃ ≠ 0.
        let p = JetFiberPoint35::new([e(1), e(2)], [z_with(&[(4, 5, 1)]), z_with(&[(3, 4, 1)])]);
        assert!(!in_s_tilde(&p));
        let p = JetFiberPoint35::new([e(1), e(1)], [z_with(&[(4, 5, 1)]), z_with(&[(3, 4, 1)])]);
        assert!(in_s_tilde(&p));
    }

    #[test]
    fn s_tilde_matches_four_form_dependence() {
        let mut rng = random::seeded(3);
        for _ in 0..300 {
            let p = random::fiber35(&mut rng);
            let a12 = one_form(&p.a[0]).wedge(&one_form(&p.a[1]));
            let f1 = four_form_coeffs(&a12.wedge(&two_form(&p.z[0])));
            let f2 = four_form_coeffs(&a12.wedge(&two_form(&p.z[1])));
            let dependent = Matrix::from_rows(&[f1.to_vec(), f2.to_vec()]).rank() < 2;
            assert_eq!(in_s_tilde(&p), dependent);
        }
    }

    fn cartan(z: [Row10; 3]) -> JetFiberPointCartan {
        JetFiberPointCartan::new([e(1), e(2), e(3)], z)
    }

    #[test]
    fn s1_and_u_examples() {
        let zero = cartan([zero_row(), zero_row(), zero_row()]);
        assert!(in_s1(&zero));
        assert_eq!(classify_u(&zero), ULabel::S1);

        let p = cartan([z_with(&[(4, 5, 1)]), zero_row(), zero_row()]);
        assert_eq!(p.five_forms()[0], int(1));
        assert!(!in_s1(&p));

        let p = JetFiberPointCartan::new([e(1), e(2), e(2)], std::array::from_fn(|_| z_with(&[(4, 5, 1)])));
        assert!(in_s1(&p));

        let p = cartan([zero_row(), zero_row(), z_with(&[(4, 5, 1)])]);
        assert_eq!(classify_u(&p), ULabel::U1(3));
        let p = cartan([z_with(&[(4, 5, 1)]), z_with(&[(4, 5, 1)]), z_with(&[(4, 5, 1)])]);
        assert_eq!(classify_u(&p), ULabel::U3);
        let p = cartan([z_with(&[(4, 5, 1)]), zero_row(), z_with(&[(4, 5, 2)])]);
        assert_eq!(classify_u(&p), ULabel::U2(1, 3));
        assert_eq!(ULabel::U2(1, 3).to_string(), "U2_13");
    }

    #[test]
    fn five_form_matches_symbolic_wedge_and_expansion() {
        let mut rng = random::seeded(4);
        for _ in 0..100 {
            let p = random::fiber_cartan(&mut rng);
            let a123 = one_form(&p.a[0]).wedge(&one_form(&p.a[1])).wedge(&one_form(&p.a[2]));
            let t = p.minors();
            for i in 0..3 {
                let w = a123.wedge(&two_form(&p.z[i]));
                let top = w.coeff(MultiIndex::new(&[1, 2, 3, 4, 5]).unwrap());
                assert_eq!(Poly::constant(p.five_forms()[i].clone()), top);
                let z = &p.z[i];
                let zz = |a: usize, b: usize| z[pair_index(a, b)].clone();
                let expanded = t.get(1, 2, 3) * zz(4, 5) - t.get(1, 2, 4) * zz(3, 5) + t.get(1, 2, 5) * zz(3, 4)
                    + t.get(1, 3, 4) * zz(2, 5)
                    - t.get(1, 3, 5) * zz(2, 4)
                    + t.get(1, 4, 5) * zz(2, 3)
                    - t.get(2, 3, 4) * zz(1, 5)
                    + t.get(2, 3, 5) * zz(1, 4)
                    - t.get(2, 4, 5) * zz(1, 3)
                    + t.get(3, 4, 5) * zz(1, 2);
                assert_eq!(p.five_forms()[i], expanded);
            }
        }
    }

    #[test]
    fn reduce_examples() {
        let w = z_with(&[(4, 5, 1), (1, 2, 3)]);
        let p = cartan([w.clone(), z_with(&[(4, 5, 2)]), w.clone()]);
        let r = reduce_omegas(&p, 3).unwrap();
        assert_eq!(r.others, [1, 2]);
        assert_eq!(r.g[0], int(1));
        assert!(r.reduced[0].iter().all(Zero::is_zero));

        let q = cartan([z_with(&[(1, 2, 5)]), zero_row(), w.clone()]);
        let r = reduce_omegas(&q, 3).unwrap();
        assert_eq!(r.g[0], int(0));
        assert_eq!(r.reduced[0], q.z[0]);

        assert!(matches!(reduce_omegas(&q, 2), Err(Error::Domain(_))));
        assert!(reduce_omegas(&q, 4).is_err());
    }

    #[test]
    fn reduced_rows_lie_in_kernel_of_five_form() {
        let mut rng = random::seeded(5);
        let mut checked = 0;
        for _ in 0..300 {
            let p = random::fiber_cartan(&mut rng);
            let t = p.minors();
            for pivot in classify_u(&p).pivots() {
                let r = reduce_omegas(&p, pivot).unwrap();
                for row in &r.reduced {
                    assert!(five_form(&t, row).is_zero());
                }
                checked += 1;
            }
        }
        assert!(checked > 50);
    }

    #[test]
    fn s2_examples() {
        let w3 = z_with(&[(4, 5, 1)]);
        // U1_3 with identical first two rows: reduced pair identical.
        let z12 = z_with(&[(1, 4, 1), (2, 5, 2)]);
        let p = cartan([z12.clone(), z12, w3.clone()]);
        assert_eq!(classify_u(&p), ULabel::U1(3));
        assert!(in_s2(&p).unwrap().member);

        // U1_3 with reduced B-vectors e₁ and e₂ (a = e₁, e₂, e₃).
        let p = cartan([z_with(&[(3, 4, 1)]), z_with(&[(3, 5, -1)]), w3]);
        assert_eq!(classify_u(&p), ULabel::U1(3));
        let red = reduce_omegas(&p, 3).unwrap().as_fiber35(&p);
        assert_eq!(red.b_rows(), [e(5), e(4).map(|v| -v)]);
        assert!(!in_s2(&p).unwrap().member);

        let s1 = cartan([zero_row(), zero_row(), zero_row()]);
        assert!(matches!(in_s2(&s1), Err(Error::Domain(_))));
    }

    #[test]
    fn sigma1_examples() {
        let t = MinorTable3::from_values(std::array::from_fn(|n| if n == 9 { int(1) } else { int(0) }));
        let (c, _) = sigma1_principal_system(&t, 1, &[zero_row(), zero_row(), zero_row()]).unwrap();
        assert_eq!(exact_rank(&c), 3);
        assert_eq!(c[(0, 0)], int(1));
        let t0 = MinorTable3::from_values(zero_row());
        let (c, rhs) = sigma1_principal_system(&t0, 1, &[zero_row(), zero_row(), zero_row()]).unwrap();
        assert!(c.is_zero());
        assert!(rhs.iter().all(Zero::is_zero));
        assert!(sigma1_principal_system(&t0, 6, &[zero_row(), zero_row(), zero_row()]).is_err());
    }

    #[test]
    fn sigma1_block_for_direction_one() {
        let mut rng = random::seeded(6);
        for _ in 0..50 {
            let t = random::free_table3(&mut rng);
            let (c, _) = sigma1_principal_system(&t, 1, &[zero_row(), zero_row(), zero_row()]).unwrap();
            let block = [t.get(3, 4, 5), -t.get(2, 4, 5), t.get(2, 3, 5), -t.get(2, 3, 4)];
            for i in 0..3 {
                for m in 0..4 {
                    assert_eq!(c[(i, 4 * i + m)], block[m]);
                }
            }
            let r = exact_rank(&c);
            assert!(r == 0 || r == 3);
        }
    }

    #[test]
    fn sigma1_system_reproduces_five_forms() {
        let mut rng = random::seeded(7);
        for _ in 0..100 {
            let p = random::fiber_cartan(&mut rng);
            let d = rng.gen_range(1..=5);
            let (c, rhs) = sigma1_principal_system(&p.minors(), d, &p.z).unwrap();
            let free: Vec<Rational> = (0..3).flat_map(|i| free_positions(d).map(|pos| p.z[i][pos].clone())).collect();
            let lhs = c.mul_vec(&free);
            for i in 0..3 {
                assert_eq!(&lhs[i] - &rhs[i], p.five_forms()[i]);
            }
        }
    }

    #[test]
    fn case1_matrix_examples() {
        let b = [int(1), int(0)];
        assert!(case1_matrix(&table2(&[]), &b).is_zero());
        // A45 only enters F12 and F13.
        let m = case1_matrix(&table2(&[(4, 5, 1)]), &b);
        assert_eq!(exact_rank(&m), 2);
        let m = case1_matrix(&table2(&[(4, 5, 1), (2, 3, 1)]), &b);
        assert_eq!(exact_rank(&m), 4);
    }

    #[test]
    fn case1_matrix_entries_for_direction_one() {
        // Row F_1k has blocks (B²₁ L_k | −B¹₁ L_k) with
        // L₂ = (0, A45, −A35, A34), L₃ = (A45, 0, −A25, A24),
        // L₄ = (A35, −A25, 0, A23), L₅ = (A34, −A24, A23, 0).
        let mut rng = random::seeded(8);
        for _ in 0..50 {
            let a = random::free_table2(&mut rng);
            let b = [random::small_rational(&mut rng), random::small_rational(&mut rng)];
            let m = case1_matrix(&a, &b);
            let g = |i, j| a.get(i, j);
            let z = Rational::zero();
            let l = [
                [z.clone(), g(4, 5), -g(3, 5), g(3, 4)],
                [g(4, 5), z.clone(), -g(2, 5), g(2, 4)],
                [g(3, 5), -g(2, 5), z.clone(), g(2, 3)],
                [g(3, 4), -g(2, 4), g(2, 3), z.clone()],
            ];
            for row in 0..4 {
                for c in 0..4 {
                    assert_eq!(m[(row, c)], &b[1] * &l[row][c]);
                    assert_eq!(m[(row, 4 + c)], -(&b[0] * &l[row][c]));
                }
            }
        }
    }

    #[test]
    fn case1_system_reproduces_f_values() {
        let mut rng = random::seeded(9);
        for _ in 0..100 {
            let p = random::fiber35(&mut rng);
            let d = rng.gen_range(1..=5);
            let (m, rhs) = case1_system(&p.minors(), d, &p.z).unwrap();
            let free: Vec<Rational> = (0..2).flat_map(|i| free_positions(d).map(|pos| p.z[i][pos].clone())).collect();
            let lhs = m.mul_vec(&free);
            let f = p.f_values();
            for (row, k) in free_partners(d).into_iter().enumerate() {
                let sign = if d < k { int(1) } else { int(-1) };
                assert_eq!(&rhs[row] - &lhs[row], sign * &f[pair_index(d, k)]);
            }
        }
    }

    #[test]
    fn case1_rank_is_even() {
        let mut rng = random::seeded(10);
        for _ in 0..300 {
            let a = random::free_table2(&mut rng);
            let b = [random::sparse_rational(&mut rng, 0.3), random::sparse_rational(&mut rng, 0.3)];
            let r = exact_rank(&case1_matrix(&a, &b));
            assert!(matches!(r, 0 | 2 | 4), "rank {r}");
        }
    }

    #[test]
    fn plucker_identity_and_case2_reduction() {
        let mut rng = random::seeded(11);
        for _ in 0..300 {
            let b1: Row5 = std::array::from_fn(|_| random::small_rational(&mut rng));
            let mut b2: Row5 = std::array::from_fn(|_| random::small_rational(&mut rng));
            let f = f_minors(&b1, &b2);
            let ff = |i: usize, j: usize| {
                if i < j {
                    f[pair_index(i, j)].clone()
                } else {
                    -f[pair_index(i, j)].clone()
                }
            };
            for j in 2..=5 {
                for k in j + 1..=5 {
                    let lhs = &b1[0] * ff(j, k) - &b1[j - 1] * ff(1, k) + &b1[k - 1] * ff(1, j);
                    assert!(lhs.is_zero());
                }
            }
            let mut b1z = b1.clone();
            b1z[0] = int(0);
            b2[0] = int(0);
            let f = f_minors(&b1z, &b2);
            assert!(f[..4].iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn swap_conjugation_is_an_involution_and_preserves_membership() {
        let mut rng = random::seeded(12);
        for _ in 0..100 {
            let p = random::fiber35(&mut rng);
            let d = rng.gen_range(1..=5);
            assert_eq!(p.swapped(d).swapped(d), p);
            assert_eq!(in_s_tilde(&p), in_s_tilde(&p.swapped(d)));
            let q = random::fiber_cartan(&mut rng);
            assert_eq!(in_s1(&q), in_s1(&q.swapped(d)));
        }
    }
}
