//! Distributions on the chart: derived flags of frames, coframe criteria for
//! Cartan (2,3,5)- and (3,5)-distributions, structure equations and the
//! almost-structure checkers.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exterior::{lie_bracket, KForm, Point, Poly, VectorField, DIM};
use crate::linalg::Matrix;
use crate::scalar::Rational;

/// Local frame `{X_1, …, X_k}` of a distribution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame(pub Vec<VectorField>);

/// 1-forms whose common kernel is a distribution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coframe(pub Vec<KForm>);

impl Coframe {
    pub fn new(forms: Vec<KForm>) -> Result<Self> {
        if let Some(f) = forms.iter().find(|f| f.degree() != 1) {
            return Err(Error::Contract(format!("coframe entries must be 1-forms, got degree {}", f.degree())));
        }
        Ok(Coframe(forms))
    }

    fn expect_len(&self, n: usize) -> Result<()> {
        if self.0.len() != n {
            return Err(Error::Contract(format!("expected {n} 1-forms, got {}", self.0.len())));
        }
        Ok(())
    }

    /// Coefficient matrix at `p`, one row per form.
    pub fn matrix_at(&self, p: &Point) -> Matrix {
        let rows: Vec<Vec<Rational>> = self.0.iter().map(|f| f.values_at(p)).collect();
        if rows.is_empty() {
            return Matrix::zeros(0, DIM);
        }
        Matrix::from_rows(&rows)
    }

    pub fn rank_at(&self, p: &Point) -> usize {
        self.matrix_at(p).rank()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FlagMode {
    Weak,
    Strong,
}

impl fmt::Display for FlagMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FlagMode::Weak => "weak",
            FlagMode::Strong => "strong",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedFlagReport {
    pub mode: FlagMode,
    /// Ranks of `D, D², …` (length `max_depth`) at each point.
    pub ranks_at_points: Vec<(Point, Vec<usize>)>,
    /// Points where the frame itself drops rank.
    pub degenerate_points: Vec<usize>,
}

/// Generating sets of each level of the derived flag.
///
/// Weak mode adds `[X_a, Y]` for frame fields `X_a` and the fields `Y`
/// introduced at the previous level; strong mode adds `[Y, Y']` for all
/// pairs with at least one of them new. Brackets with older generators
/// already lie in the previous level.
pub fn flag_generators(frame: &Frame, mode: FlagMode, max_depth: usize) -> Result<Vec<Vec<VectorField>>> {
    if frame.0.is_empty() {
        return Err(Error::Contract("derived flag of an empty frame".into()));
    }
    if max_depth == 0 {
        return Err(Error::Contract("derived flag depth must be at least 1".into()));
    }
    let mut levels: Vec<Vec<VectorField>> = vec![frame.0.clone()];
    let mut all: Vec<VectorField> = frame.0.clone();
    let mut newest: Vec<VectorField> = frame.0.clone();
    for _ in 1..max_depth {
        let mut added = Vec::new();
        match mode {
            FlagMode::Weak => {
                for x in &frame.0 {
                    for y in &newest {
                        added.push(lie_bracket(x, y));
                    }
                }
            }
            FlagMode::Strong => {
                let old_len = all.len() - newest.len();
                for (i, x) in all.iter().enumerate() {
                    for (j, y) in all.iter().enumerate().skip(i + 1) {
                        if i >= old_len || j >= old_len {
                            added.push(lie_bracket(x, y));
                        }
                    }
                }
            }
        }
        let mut fresh = Vec::new();
        for v in added {
            if !v.is_zero() && !all.contains(&v) && !fresh.contains(&v) {
                fresh.push(v);
            }
        }
        all.extend(fresh.iter().cloned());
        levels.push(all.clone());
        newest = fresh;
    }
    Ok(levels)
}

fn span_rank(fields: &[VectorField], p: &Point) -> usize {
    if fields.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Rational>> = fields.iter().map(|v| v.eval(p).to_vec()).collect();
    Matrix::from_rows(&rows).rank()
}

pub fn derived_flag(frame: &Frame, mode: FlagMode, max_depth: usize, points: &[Point]) -> Result<DerivedFlagReport> {
    let levels = flag_generators(frame, mode, max_depth)?;
    let mut ranks_at_points = Vec::new();
    let mut degenerate_points = Vec::new();
    for (idx, p) in points.iter().enumerate() {
        let ranks: Vec<usize> = levels.iter().map(|g| span_rank(g, p)).collect();
        if ranks[0] < frame.0.len() {
            degenerate_points.push(idx);
        }
        ranks_at_points.push((p.clone(), ranks));
    }
    Ok(DerivedFlagReport {
        mode,
        ranks_at_points,
        degenerate_points,
    })
}

/// A named condition and whether it holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub name: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointVerdict {
    pub point: Point,
    pub holds: bool,
    pub conditions: Vec<Condition>,
}

/// Per-point results plus the generic verdict, where vanishing conditions
/// are tested as polynomial identities and non-vanishing conditions hold
/// off a proper algebraic subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoframeVerdict {
    pub points: Vec<PointVerdict>,
    pub generic: Vec<Condition>,
    pub generic_holds: bool,
}

fn all_hold(c: &[Condition]) -> bool {
    c.iter().all(|c| c.holds)
}

/// Two top-minus-one forms are independent iff their 2×5 coefficient matrix
/// has rank 2.
fn independent_at(a: &KForm, b: &KForm, p: &Point) -> bool {
    Matrix::from_rows(&[a.values_at(p), b.values_at(p)]).rank() == 2
}

/// Generic independence: some 2×2 minor of the coefficient matrix is a
/// nonzero polynomial.
fn independent_generically(a: &KForm, b: &KForm) -> bool {
    let ca = a.coefficient_vector();
    let cb = b.coefficient_vector();
    (0..ca.len()).any(|i| (i + 1..ca.len()).any(|j| !(&(&ca[i] * &cb[j]) - &(&ca[j] * &cb[i])).is_zero()))
}

fn nonzero_at(f: &KForm, p: &Point) -> bool {
    f.values_at(p).iter().any(|v| !v.is_zero())
}

pub fn is_cartan_coframe(c: &Coframe, points: &[Point]) -> Result<CoframeVerdict> {
    c.expect_len(3)?;
    let [a1, a2, a3] = [&c.0[0], &c.0[1], &c.0[2]];
    let a12 = a1.wedge(a2);
    let a123 = a12.wedge(a3);
    let v1 = a123.wedge(&a1.d());
    let v2 = a123.wedge(&a2.d());
    let v3 = a123.wedge(&a3.d());
    let i1 = a12.wedge(&a1.d());
    let i2 = a12.wedge(&a2.d());
    let names = [
        "a1^a2^a3^d(a1) = 0",
        "a1^a2^a3^d(a2) = 0",
        "a1^a2^a3^d(a3) != 0",
        "a1^a2^d(a1), a1^a2^d(a2) independent",
    ];
    let points = points
        .iter()
        .map(|p| {
            let checks = [
                !nonzero_at(&v1, p),
                !nonzero_at(&v2, p),
                nonzero_at(&v3, p),
                independent_at(&i1, &i2, p),
            ];
            verdict(p, &names, &checks)
        })
        .collect();
    let generic_checks = [v1.is_zero(), v2.is_zero(), !v3.is_zero(), independent_generically(&i1, &i2)];
    Ok(finish(points, &names, &generic_checks))
}

pub fn is_35_coframe(c: &Coframe, points: &[Point]) -> Result<CoframeVerdict> {
    c.expect_len(2)?;
    let a12 = c.0[0].wedge(&c.0[1]);
    let i1 = a12.wedge(&c.0[0].d());
    let i2 = a12.wedge(&c.0[1].d());
    let names = ["a1^a2^d(a1), a1^a2^d(a2) independent"];
    let points = points
        .iter()
        .map(|p| verdict(p, &names, &[independent_at(&i1, &i2, p)]))
        .collect();
    Ok(finish(points, &names, &[independent_generically(&i1, &i2)]))
}

fn verdict(p: &Point, names: &[&'static str], checks: &[bool]) -> PointVerdict {
    let conditions: Vec<Condition> = names
        .iter()
        .zip(checks)
        .map(|(&name, &holds)| Condition { name, holds })
        .collect();
    PointVerdict {
        point: p.clone(),
        holds: all_hold(&conditions),
        conditions,
    }
}

fn finish(points: Vec<PointVerdict>, names: &[&'static str], generic: &[bool]) -> CoframeVerdict {
    let generic: Vec<Condition> = names
        .iter()
        .zip(generic)
        .map(|(&name, &holds)| Condition { name, holds })
        .collect();
    CoframeVerdict {
        points,
        generic_holds: all_hold(&generic),
        generic,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructurePoint {
    pub point: Point,
    /// False if the five forms are not a coframe at the point.
    pub coframe: bool,
    pub congruences: [bool; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureVerdict {
    /// Each congruence tested as a polynomial identity.
    pub congruences: [bool; 3],
    /// Whether `dα_i` equals its model term on the nose, not just modulo the ideal.
    pub exact_equalities: [bool; 3],
    pub points: Vec<StructurePoint>,
}

pub const STRUCTURE_EQUATIONS: [&str; 3] = [
    "d(a1) = a3^a4 mod (a1, a2)",
    "d(a2) = a3^a5 mod (a1, a2)",
    "d(a3) = a4^a5 mod (a1, a2, a3)",
];

/// Defects of the three structure equations together with the forms they
/// are wedged against.
fn structure_defects(a: &[KForm]) -> [(KForm, KForm); 3] {
    let a12 = a[0].wedge(&a[1]);
    let a123 = a12.wedge(&a[2]);
    let e1 = &a[0].d() - &a[2].wedge(&a[3]);
    let e2 = &a[1].d() - &a[2].wedge(&a[4]);
    let e3 = &a[2].d() - &a[3].wedge(&a[4]);
    [(e1, a12.clone()), (e2, a12), (e3, a123)]
}

pub fn check_structure_equations(c: &Coframe, points: &[Point]) -> Result<StructureVerdict> {
    c.expect_len(5)?;
    let defects = structure_defects(&c.0);
    let wedged: Vec<KForm> = defects.iter().map(|(e, w)| e.wedge(w)).collect();
    let congruences = std::array::from_fn(|i| wedged[i].is_zero());
    let exact_equalities = std::array::from_fn(|i| defects[i].0.is_zero());
    let points = points
        .iter()
        .map(|p| StructurePoint {
            point: p.clone(),
            coframe: c.rank_at(p) == DIM,
            congruences: std::array::from_fn(|i| !nonzero_at(&wedged[i], p)),
        })
        .collect();
    Ok(StructureVerdict {
        congruences,
        exact_equalities,
        points,
    })
}

/// `(α₁, α₂, α₃; ω₁, ω₂, ω₃)` with `D = ker(α₁, α₂, α₃)` and `E = ker(α₁, α₂)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostCartanTuple {
    pub alphas: [KForm; 3],
    pub omegas: [KForm; 3],
}

/// `(α₁, α₂; ω₁, ω₂)` with `D = ker(α₁, α₂)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Almost35Tuple {
    pub alphas: [KForm; 2],
    pub omegas: [KForm; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostPoint {
    pub point: Point,
    pub holds: bool,
    /// Failed condition labels: `"(1)-(i)"`, `"(1)-(ii)"`, `"(2)"`, or a
    /// rank precondition message.
    pub reasons: Vec<String>,
}

fn kernel_basis(forms: &[KForm], p: &Point, expected_rank: usize) -> std::result::Result<Vec<[Rational; DIM]>, String> {
    let m = Matrix::from_rows(&forms.iter().map(|f| f.values_at(p)).collect::<Vec<_>>());
    let r = m.rank();
    if r != expected_rank {
        return Err(format!("{} 1-forms have rank {r} at the point, expected {expected_rank}", forms.len()));
    }
    Ok(m.kernel()
        .into_iter()
        .map(|v| std::array::from_fn(|i| v[i].clone()))
        .collect())
}

/// Coefficients of the restriction of a 2-form to the span of `basis`,
/// one per pair `a < b` of basis vectors.
fn restrict_two_form(w: &KForm, basis: &[[Rational; DIM]], p: &Point) -> Result<Vec<Rational>> {
    let mut out = Vec::new();
    for a in 0..basis.len() {
        for b in a + 1..basis.len() {
            out.push(w.apply_vectors(&[basis[a].clone(), basis[b].clone()], p)?);
        }
    }
    Ok(out)
}

fn degree_check(forms: &[&KForm], degree: usize, what: &str) -> Result<()> {
    if let Some(f) = forms.iter().find(|f| f.degree() != degree) {
        return Err(Error::Contract(format!("{what} must have degree {degree}, got {}", f.degree())));
    }
    Ok(())
}

pub fn check_almost_cartan(t: &AlmostCartanTuple, points: &[Point]) -> Result<Vec<AlmostPoint>> {
    degree_check(&t.alphas.iter().collect::<Vec<_>>(), 1, "alphas")?;
    degree_check(&t.omegas.iter().collect::<Vec<_>>(), 2, "omegas")?;
    points
        .iter()
        .map(|p| {
            let mut reasons = Vec::new();
            let d = kernel_basis(&t.alphas, p, 3);
            let e = kernel_basis(&t.alphas[..2], p, 2);
            match (d, e) {
                (Ok(d), Ok(e)) => {
                    let r: Vec<Vec<Rational>> = t
                        .omegas
                        .iter()
                        .map(|w| restrict_two_form(w, &d, p))
                        .collect::<Result<_>>()?;
                    if r[0].iter().chain(&r[1]).any(|v| !v.is_zero()) {
                        reasons.push("(1)-(i)".to_string());
                    }
                    if r[2].iter().all(Zero::is_zero) {
                        reasons.push("(1)-(ii)".to_string());
                    }
                    let re1 = restrict_two_form(&t.omegas[0], &e, p)?;
                    let re2 = restrict_two_form(&t.omegas[1], &e, p)?;
                    if Matrix::from_rows(&[re1, re2]).rank() != 2 {
                        reasons.push("(2)".to_string());
                    }
                }
                (d, e) => {
                    reasons.extend(d.err());
                    reasons.extend(e.err());
                }
            }
            Ok(AlmostPoint {
                point: p.clone(),
                holds: reasons.is_empty(),
                reasons,
            })
        })
        .collect()
}

pub fn check_almost_35(t: &Almost35Tuple, points: &[Point]) -> Result<Vec<AlmostPoint>> {
    degree_check(&t.alphas.iter().collect::<Vec<_>>(), 1, "alphas")?;
    degree_check(&t.omegas.iter().collect::<Vec<_>>(), 2, "omegas")?;
    points
        .iter()
        .map(|p| {
            let mut reasons = Vec::new();
            match kernel_basis(&t.alphas, p, 2) {
                Ok(d) => {
                    let r1 = restrict_two_form(&t.omegas[0], &d, p)?;
                    let r2 = restrict_two_form(&t.omegas[1], &d, p)?;
                    if Matrix::from_rows(&[r1, r2]).rank() != 2 {
                        reasons.push("omegas dependent on D".to_string());
                    }
                }
                Err(msg) => reasons.push(msg),
            }
            Ok(AlmostPoint {
                point: p.clone(),
                holds: reasons.is_empty(),
                reasons,
            })
        })
        .collect()
}

/// `alphas = (α₁, α₂, γ)`, `omegas = (γ∧β₁, γ∧β₂, β₁∧β₂)`.
pub fn build_almost_cartan_from_splitting(
    beta1: &KForm,
    beta2: &KForm,
    gamma: &KForm,
    alpha1: &KForm,
    alpha2: &KForm,
) -> Result<AlmostCartanTuple> {
    degree_check(&[beta1, beta2, gamma, alpha1, alpha2], 1, "splitting forms")?;
    Ok(AlmostCartanTuple {
        alphas: [alpha1.clone(), alpha2.clone(), gamma.clone()],
        omegas: [gamma.wedge(beta1), gamma.wedge(beta2), beta1.wedge(beta2)],
    })
}

/// `omegas = (dα₁, dα₂, dα₃)`.
pub fn induced_almost_cartan(c: &Coframe) -> Result<AlmostCartanTuple> {
    c.expect_len(3)?;
    Ok(AlmostCartanTuple {
        alphas: [c.0[0].clone(), c.0[1].clone(), c.0[2].clone()],
        omegas: [c.0[0].d(), c.0[1].d(), c.0[2].d()],
    })
}

/// Polynomial frame of the kernel of a coframe of `k < 5` forms.
///
/// Picks the first column set `S` (lexicographic) whose `k×k` minor is a
/// nonzero constant, else nonzero at every given point, else merely nonzero.
/// For each remaining column `f` the field has `∂_f`-component `det M_S` and
/// the `S`-components given by Cramer's rule, so it is annihilated by every
/// form and the fields are independent wherever `det M_S ≠ 0`.
pub fn kernel_frame(c: &Coframe, points: &[Point]) -> Result<Frame> {
    let k = c.0.len();
    if k == 0 || k >= DIM {
        return Err(Error::Contract(format!("kernel frame needs 1..=4 forms, got {k}")));
    }
    let coeffs: Vec<Vec<Poly>> = c.0.iter().map(KForm::coefficient_vector).collect();
    let subsets = column_subsets(k);
    let minor = |cols: &[usize]| -> Poly {
        let m: Vec<Vec<Poly>> = coeffs.iter().map(|row| cols.iter().map(|&j| row[j].clone()).collect()).collect();
        poly_det(&m)
    };
    let minors: Vec<Poly> = subsets.iter().map(|s| minor(s)).collect();
    let pick = minors
        .iter()
        .position(|m| m.as_constant().is_some_and(|c| !c.is_zero()))
        .or_else(|| {
            minors
                .iter()
                .position(|m| !m.is_zero() && points.iter().all(|p| !m.eval(p).is_zero()))
        })
        .or_else(|| minors.iter().position(|m| !m.is_zero()))
        .ok_or_else(|| Error::Contract("forms are dependent everywhere; no kernel frame".into()))?;
    let cols = &subsets[pick];
    let det = &minors[pick];
    let mut fields = Vec::new();
    for f in (0..DIM).filter(|j| !cols.contains(j)) {
        let mut comps: [Poly; DIM] = Default::default();
        comps[f] = det.clone();
        for (pos, &s) in cols.iter().enumerate() {
            // Cramer: replace column `pos` of M_S by the f-th column.
            let mut sub = cols.clone();
            sub[pos] = f;
            comps[s] = -minor(&sub);
        }
        fields.push(VectorField::new(comps));
    }
    Ok(Frame(fields))
}

fn column_subsets(k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..DIM {
            cur.push(j);
            rec(j + 1, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, &mut Vec::new(), &mut out);
    out
}

fn poly_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut acc = Poly::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let sub: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][j] * &poly_det(&sub);
        if j % 2 == 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    acc
}

/// The adapted coframe of the Hilbert–Cartan model `z' = (y'')²` in
/// coordinates `(x, y, p, q, z)`:
/// `(dy − p dx, ½dz − q dp + ½q² dx, q dx − dp, dx, −dq)`.
pub fn hilbert_cartan_coframe() -> [KForm; 5] {
    let x = Poly::var;
    let half = Rational::new(1.into(), 2.into());
    let dx = KForm::dx;
    [
        &dx(2) - &dx(1).scale(&x(3)),
        &(&dx(5).scale_rational(&half) - &dx(3).scale(&x(4))) + &dx(1).scale(&x(4).pow(2).scale(&half)),
        &dx(1).scale(&x(4)) - &dx(3),
        dx(1),
        -&dx(4),
    ]
}
