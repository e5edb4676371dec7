//! Ampleness certificates on principal subspaces: the Case-1 linear system,
//! the Case-2 quadrics `F_jk = zᵀGz + 2Hᵀz + K` with their spectra and
//! classification, convex-hull witnesses for the quadric normal forms, and
//! the verdicts for the (3,5) and Cartan relations.
//!
//! Free variables on the principal subspace of direction `d` are ordered
//! `(z¹_{dl}, z²_{dl})` with `l ≠ d` increasing.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report;
use crate::scalar::{int, rat, sqrt_upper_bound, Rational};
use crate::strata::{
    case1_system, classify_u, in_s1, principal_b, reduce_omegas, sigma1_principal_system, JetFiberPoint35,
    JetFiberPointCartan, MinorTable2, PrincipalB, Row10, ULabel,
};

/// `F(z) = zᵀGz + 2Hᵀz + K` on the 8 free variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricData {
    pub g: Matrix,
    pub h: Vec<Rational>,
    pub k: Rational,
}

impl QuadricData {
    pub fn eval(&self, z: &[Rational]) -> Rational {
        let gz = self.g.mul_vec(z);
        let quad: Rational = z.iter().zip(&gz).map(|(a, b)| a * b).sum();
        let lin: Rational = z.iter().zip(&self.h).map(|(a, b)| a * b).sum();
        quad + int(2) * lin + &self.k
    }

    pub fn to_json(&self) -> Value {
        json!({"G": report::matrix(&self.g), "H": report::rats(&self.h), "K": report::rat(&self.k)})
    }
}

/// The quadric `F_jk` on the principal subspace described by `pb`.
///
/// With `B^i_r = L_r·z^i + C^i_r`,
/// `F_jk = z¹ᵀ(L_j L_kᵀ − L_k L_jᵀ)z² + (C²_k L_j − C²_j L_k)·z¹ + (C¹_j L_k − C¹_k L_j)·z² + C¹_j C²_k − C¹_k C²_j`.
pub fn fjk_quadric(pb: &PrincipalB, j: usize, k: usize) -> QuadricData {
    let (lj, lk) = (&pb.linear[j - 1], &pb.linear[k - 1]);
    let (c1, c2) = (&pb.constant[0], &pb.constant[1]);
    let half = rat(1, 2);
    let mut g = Matrix::zeros(8, 8);
    for a in 0..4 {
        for b in 0..4 {
            let g1 = &lj[a] * &lk[b] - &lk[a] * &lj[b];
            let v = &g1 * &half;
            g[(a, 4 + b)] = v.clone();
            g[(4 + b, a)] = v;
        }
    }
    let mut h = Vec::with_capacity(8);
    for a in 0..4 {
        h.push((&c2[k - 1] * &lj[a] - &c2[j - 1] * &lk[a]) * &half);
    }
    for a in 0..4 {
        h.push((&c1[j - 1] * &lk[a] - &c1[k - 1] * &lj[a]) * &half);
    }
    let kk = &c1[j - 1] * &c2[k - 1] - &c1[k - 1] * &c2[j - 1];
    QuadricData { g, h, k: kk }
}

/// `F₂₃` on the principal subspace of direction 1.
pub fn f23_quadric(a: &MinorTable2, z: &[Row10; 2]) -> QuadricData {
    let pb = principal_b(a, 1, z).expect("direction 1 is valid");
    fjk_quadric(&pb, 2, 3)
}

/// `γ²` for `F₂₃` in direction 1:
/// `¼(A₄₅²(A₂₄² + A₂₅² + A₃₄² + A₃₅² + A₄₅²) + (A₂₄A₃₅ − A₂₅A₃₄)²)`.
pub fn gamma_squared(a: &MinorTable2) -> Rational {
    let g = |i, j| a.get(i, j);
    let a45 = g(4, 5);
    let sum = g(2, 4).pow(2) + g(2, 5).pow(2) + g(3, 4).pow(2) + g(3, 5).pow(2) + a45.pow(2);
    let cross = g(2, 4) * g(3, 5) - g(2, 5) * g(3, 4);
    (a45.pow(2) * sum + cross.pow(2)) * rat(1, 4)
}

/// `γ² = tr(G²)/4`, valid for any quadric of the block form above.
pub fn quadric_gamma_squared(q: &QuadricData) -> Rational {
    q.g.mul(&q.g).trace() * rat(1, 4)
}

/// Whether `det(λ − G) = λ⁴(λ² − γ²)²` exactly.
pub fn spectral_check_with(q: &QuadricData, gamma2: &Rational) -> bool {
    if q.g.rows() != 8 || q.g.cols() != 8 {
        return false;
    }
    let mut expected = vec![Rational::zero(); 9];
    expected[8] = Rational::one();
    expected[6] = -(gamma2 * int(2));
    expected[4] = gamma2.pow(2);
    q.g.char_poly() == expected
}

pub fn spectral_check(q: &QuadricData) -> bool {
    spectral_check_with(q, &quadric_gamma_squared(q))
}

/// `F₂₃` is linear iff `A₄₅ = 0` and `A₂₄A₃₅ − A₂₅A₃₄ = 0`.
pub fn is_linear_case(a: &MinorTable2) -> bool {
    a.get(4, 5).is_zero() && (a.get(2, 4) * a.get(3, 5) - a.get(2, 5) * a.get(3, 4)).is_zero()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadricClass {
    DegenerateLinear,
    CentralCone,
    CentralHyperboloid,
    NonCentral,
}

impl fmt::Display for QuadricClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuadricClass::DegenerateLinear => "degenerate-linear",
            QuadricClass::CentralCone => "central-cone",
            QuadricClass::CentralHyperboloid => "central-hyperboloid",
            QuadricClass::NonCentral => "non-central",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub class: QuadricClass,
    pub gamma2: Rational,
    /// A center `z₀` with `G z₀ = −H` for central quadrics.
    pub center: Option<Vec<Rational>>,
    /// `F(z₀) = K + Hᵀz₀` for central quadrics.
    pub reduced_constant: Option<Rational>,
}

impl Classification {
    /// Normal form of `F = 0` up to an affine change of variables.
    pub fn normal_form(&self) -> Option<NormalForm> {
        match self.class {
            QuadricClass::DegenerateLinear => None,
            QuadricClass::CentralCone => Some(NormalForm::Cone),
            QuadricClass::NonCentral => Some(NormalForm::Paraboloid),
            QuadricClass::CentralHyperboloid => {
                let c = self.reduced_constant.as_ref().expect("central quadric has a constant");
                Some(NormalForm::Hyperboloid(if c.is_positive() { int(-1) } else { int(1) }))
            }
        }
    }
}

pub fn classify_quadric(q: &QuadricData) -> Classification {
    let gamma2 = quadric_gamma_squared(q);
    if gamma2.is_zero() {
        return Classification {
            class: QuadricClass::DegenerateLinear,
            gamma2,
            center: None,
            reduced_constant: None,
        };
    }
    let neg_h: Vec<Rational> = q.h.iter().map(|v| -v.clone()).collect();
    match q.g.solve(&neg_h) {
        Some(z0) => {
            let c: Rational = &q.k + q.h.iter().zip(&z0).map(|(a, b)| a * b).sum::<Rational>();
            let class = if c.is_zero() {
                QuadricClass::CentralCone
            } else {
                QuadricClass::CentralHyperboloid
            };
            Classification {
                class,
                gamma2,
                center: Some(z0),
                reduced_constant: Some(c),
            }
        }
        None => Classification {
            class: QuadricClass::NonCentral,
            gamma2,
            center: None,
            reduced_constant: None,
        },
    }
}

/// Normal forms `f(x) = x₁² + x₂² − x₃² − x₄² − c` (cone: `c = 0`) and
/// `f(x) = x₁² + x₂² − x₃² − x₄² + x₅` (paraboloid) on 8 coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalForm {
    Cone,
    Hyperboloid(Rational),
    Paraboloid,
}

impl NormalForm {
    pub fn eval(&self, x: &[Rational]) -> Rational {
        let q = x[0].pow(2) + x[1].pow(2) - x[2].pow(2) - x[3].pow(2);
        match self {
            NormalForm::Cone => q,
            NormalForm::Hyperboloid(c) => q - c,
            NormalForm::Paraboloid => q + &x[4],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            NormalForm::Cone => "cone",
            NormalForm::Hyperboloid(_) => "hyperboloid",
            NormalForm::Paraboloid => "paraboloid",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            NormalForm::Hyperboloid(c) => json!({"form": self.name(), "c": report::rat(c)}),
            _ => json!({"form": self.name()}),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `U₊ = {f > 0}`.
    Plus,
    /// `U₋ = {f < 0}`.
    Minus,
}

impl Side {
    fn contains(self, value: &Rational) -> bool {
        match self {
            Side::Plus => value.is_positive(),
            Side::Minus => value.is_negative(),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Plus => "+",
            Side::Minus => "-",
        })
    }
}

/// A segment `[p¹, p²]` with both endpoints in `U_side` and
/// `point = t·p¹ + (1 − t)·p²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullWitness {
    pub form: NormalForm,
    pub side: Side,
    pub epsilon: Rational,
    pub point: Vec<Rational>,
    pub p1: Vec<Rational>,
    pub p2: Vec<Rational>,
    pub t: Rational,
}

impl HullWitness {
    pub fn to_json(&self) -> Value {
        json!({
            "normal_form": self.form.to_json(),
            "side": self.side.to_string(),
            "epsilon": report::rat(&self.epsilon),
            "point": report::rats(&self.point),
            "p1": report::rats(&self.p1),
            "p2": report::rats(&self.p2),
            "t": report::rat(&self.t),
        })
    }
}

/// Segment through `p` parallel to the `x₁` axis (side `+`) or the `x₃`
/// axis (side `−`), reaching `f = ±ε` or beyond at both ends. When the
/// needed half-length is not rational, a rational upper bound is used.
pub fn hull_witness(form: &NormalForm, p: &[Rational], side: Side, epsilon: &Rational) -> Result<HullWitness> {
    if p.len() != 8 {
        return Err(Error::Shape(format!("witness point needs 8 coordinates, got {}", p.len())));
    }
    if !epsilon.is_positive() {
        return Err(Error::Contract("epsilon must be positive".into()));
    }
    let fp = form.eval(p);
    if side.contains(&fp) {
        return Err(Error::Domain(format!("point already lies in U{side}; no witness needed")));
    }
    let (axis, radicand) = match side {
        Side::Plus => (0, p[0].pow(2) - &fp + epsilon),
        Side::Minus => (2, p[2].pow(2) + &fp + epsilon),
    };
    let q = sqrt_upper_bound(&radicand);
    let mut p1 = p.to_vec();
    let mut p2 = p.to_vec();
    p1[axis] = q.clone();
    p2[axis] = -q.clone();
    let t = (&p[axis] + &q) / (int(2) * &q);
    Ok(HullWitness {
        form: form.clone(),
        side,
        epsilon: epsilon.clone(),
        point: p.to_vec(),
        p1,
        p2,
        t,
    })
}

/// Exact check of a witness against `form`.
pub fn verify_witness(w: &HullWitness, form: &NormalForm) -> bool {
    let n = w.point.len();
    if n != 8 || w.p1.len() != n || w.p2.len() != n {
        return false;
    }
    if !(w.t.is_positive() && w.t < Rational::one()) {
        return false;
    }
    if !w.side.contains(&form.eval(&w.p1)) || !w.side.contains(&form.eval(&w.p2)) {
        return false;
    }
    let s = Rational::one() - &w.t;
    (0..n).all(|i| w.point[i] == &w.t * &w.p1[i] + &s * &w.p2[i])
}

/// A point outside `U_side` used when a verdict needs a concrete witness.
pub fn canonical_off_region_point(form: &NormalForm, side: Side) -> Vec<Rational> {
    let mut p = vec![Rational::zero(); 8];
    let c = match form {
        NormalForm::Hyperboloid(c) => c.clone(),
        _ => Rational::zero(),
    };
    match side {
        // f = −m² − c ≤ 0
        Side::Plus => p[2] = sqrt_upper_bound(&-c),
        // f = m² − c ≥ 0
        Side::Minus => p[0] = sqrt_upper_bound(&c),
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricCertificate {
    pub pair: (usize, usize),
    pub quadric: QuadricData,
    pub classification: Classification,
}

impl QuadricCertificate {
    pub fn to_json(&self) -> Value {
        let c = &self.classification;
        let mut v = json!({
            "pair": format!("F{}{}", self.pair.0, self.pair.1),
            "class": c.class.to_string(),
            "gamma2": report::rat(&c.gamma2),
            "spectral_check": spectral_check_with(&self.quadric, &c.gamma2),
        });
        if let Some(r) = &c.reduced_constant {
            v["reduced_constant"] = report::rat(r);
        }
        if let Some(nf) = c.normal_form() {
            v["normal_form"] = nf.to_json();
        }
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingularSet {
    Whole,
    Empty,
}

impl fmt::Display for SingularSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SingularSet::Whole => "whole",
            SingularSet::Empty => "empty",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict35Kind {
    /// Case 1, inconsistent linear system.
    EmptyIntersection { rank: usize },
    /// Case 1, solution set of codimension `rank ≥ 2`.
    Thin { rank: usize },
    /// Case 1 with a zero consistent system.
    Whole,
    /// Case 2 with at least one nonlinear quadric.
    Quadric {
        quadrics: Vec<QuadricCertificate>,
        witnesses: Vec<HullWitness>,
    },
    /// Case 2 with every `F_jk` constant.
    AllLinearConstant { singular: SingularSet },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict35 {
    pub direction: usize,
    pub case: u8,
    pub b_column: [Rational; 2],
    /// Case-1 system `M z = rhs`.
    pub system: Option<(Matrix, Vec<Rational>)>,
    pub kind: Verdict35Kind,
}

impl Verdict35 {
    pub fn label(&self) -> &'static str {
        match self.kind {
            Verdict35Kind::EmptyIntersection { .. } => "ample-empty-intersection",
            Verdict35Kind::Thin { .. } => "ample-thin",
            Verdict35Kind::Whole => "ample-whole",
            Verdict35Kind::Quadric { .. } => "ample-quadric",
            Verdict35Kind::AllLinearConstant { .. } => "all-linear-constant",
        }
    }

    /// Whether every certificate checks out.
    pub fn ample(&self) -> bool {
        match &self.kind {
            Verdict35Kind::Thin { rank } => *rank >= 2,
            Verdict35Kind::Quadric { quadrics, witnesses } => {
                quadrics.iter().any(|q| q.classification.class != QuadricClass::DegenerateLinear)
                    && !witnesses.is_empty()
                    && witnesses.iter().all(|w| verify_witness(w, &w.form))
            }
            _ => true,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "verdict": self.label(),
            "ample": self.ample(),
            "direction": self.direction,
            "case": self.case,
            "b_column": report::rats(&self.b_column),
        });
        if let Some((m, rhs)) = &self.system {
            v["matrix"] = report::matrix(m);
            v["rhs"] = report::rats(rhs);
        }
        match &self.kind {
            Verdict35Kind::EmptyIntersection { rank } | Verdict35Kind::Thin { rank } => {
                v["rank"] = json!(rank);
            }
            Verdict35Kind::Whole => v["rank"] = json!(0),
            Verdict35Kind::Quadric { quadrics, witnesses } => {
                v["quadrics"] = Value::Array(quadrics.iter().map(QuadricCertificate::to_json).collect());
                v["witnesses"] = Value::Array(witnesses.iter().map(HullWitness::to_json).collect());
            }
            Verdict35Kind::AllLinearConstant { singular } => {
                v["singular_set"] = json!(singular.to_string());
            }
        }
        v
    }
}

pub fn ampleness_verdict_35(p: &JetFiberPoint35, direction: usize) -> Result<Verdict35> {
    let a = p.minors();
    let pb = principal_b(&a, direction, &p.z)?;
    let b_column = pb.b_column();
    if b_column.iter().any(|v| !v.is_zero()) {
        let (m, rhs) = case1_system(&a, direction, &p.z)?;
        let rank = m.rank();
        let consistent = m.solve(&rhs).is_some();
        let kind = match (rank, consistent) {
            (_, false) => Verdict35Kind::EmptyIntersection { rank },
            (0, true) => Verdict35Kind::Whole,
            (1, true) => {
                return Err(Error::Invariant("Case-1 coefficient matrix has rank 1".into()));
            }
            (r, true) => Verdict35Kind::Thin { rank: r },
        };
        return Ok(Verdict35 {
            direction,
            case: 1,
            b_column,
            system: Some((m, rhs)),
            kind,
        });
    }

    let others: Vec<usize> = (1..=5).filter(|&l| l != direction).collect();
    let mut quadrics = Vec::new();
    for (n, &j) in others.iter().enumerate() {
        for &k in &others[n + 1..] {
            let q = fjk_quadric(&pb, j, k);
            let classification = classify_quadric(&q);
            quadrics.push(QuadricCertificate {
                pair: (j, k),
                quadric: q,
                classification,
            });
        }
    }
    let nonlinear = quadrics
        .iter()
        .find(|q| q.classification.class != QuadricClass::DegenerateLinear);
    let kind = match nonlinear {
        Some(cert) => {
            let form = cert.classification.normal_form().expect("nonlinear quadric has a normal form");
            let witnesses = [Side::Plus, Side::Minus]
                .into_iter()
                .map(|side| hull_witness(&form, &canonical_off_region_point(&form, side), side, &int(1)))
                .collect::<Result<Vec<_>>>()?;
            Verdict35Kind::Quadric { quadrics, witnesses }
        }
        None => {
            if quadrics.iter().any(|q| !q.quadric.h.iter().all(Zero::is_zero)) {
                return Err(Error::Invariant("all F_jk linear but not all constant".into()));
            }
            let singular = if quadrics.iter().all(|q| q.quadric.k.is_zero()) {
                SingularSet::Whole
            } else {
                SingularSet::Empty
            };
            Verdict35Kind::AllLinearConstant { singular }
        }
    };
    Ok(Verdict35 {
        direction,
        case: 2,
        b_column,
        system: None,
        kind,
    })
}

/// Step-2 case: how `Σ₁` meets the principal subspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sigma1Branch {
    Whole,
    Empty,
    Thin,
}

impl Sigma1Branch {
    pub fn case_number(self) -> u8 {
        match self {
            Sigma1Branch::Whole => 1,
            Sigma1Branch::Empty => 2,
            Sigma1Branch::Thin => 3,
        }
    }
}

impl fmt::Display for Sigma1Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sigma1Branch::Whole => "whole",
            Sigma1Branch::Empty => "empty",
            Sigma1Branch::Thin => "thin",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sigma1Part {
    pub matrix: Matrix,
    pub rhs: Vec<Rational>,
    pub rank: usize,
    pub branch: Sigma1Branch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sigma2Part {
    NotApplicable(String),
    Delegated {
        label: ULabel,
        parts: Vec<(usize, Verdict35)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerdictCartan {
    pub direction: usize,
    pub sigma1: Sigma1Part,
    pub sigma2: Sigma2Part,
}

impl VerdictCartan {
    pub fn ample(&self) -> bool {
        let s1 = self.sigma1.branch != Sigma1Branch::Thin || self.sigma1.rank >= 2;
        let s2 = match &self.sigma2 {
            Sigma2Part::NotApplicable(_) => true,
            Sigma2Part::Delegated { parts, .. } => parts.iter().all(|(_, v)| v.ample()),
        };
        s1 && s2
    }

    pub fn to_json(&self) -> Value {
        let s1 = &self.sigma1;
        let sigma2 = match &self.sigma2 {
            Sigma2Part::NotApplicable(reason) => json!({"applicable": false, "reason": reason}),
            Sigma2Part::Delegated { label, parts } => json!({
                "applicable": true,
                "stratum": label.to_string(),
                "pivots": parts.iter().map(|(i, v)| json!({"pivot": i, "verdict": v.to_json()})).collect::<Vec<_>>(),
            }),
        };
        json!({
            "ample": self.ample(),
            "direction": self.direction,
            "step2_case": s1.branch.case_number(),
            "sigma1": {
                "matrix": report::matrix(&s1.matrix),
                "rhs": report::rats(&s1.rhs),
                "rank": s1.rank,
                "intersection": s1.branch.to_string(),
            },
            "sigma2": sigma2,
        })
    }
}

pub fn ampleness_verdict_cartan(p: &JetFiberPointCartan, direction: usize) -> Result<VerdictCartan> {
    let (matrix, rhs) = sigma1_principal_system(&p.minors(), direction, &p.z)?;
    let rank = matrix.rank();
    let branch = match rank {
        0 if rhs.iter().all(Zero::is_zero) => Sigma1Branch::Whole,
        0 => Sigma1Branch::Empty,
        3 => Sigma1Branch::Thin,
        r => return Err(Error::Invariant(format!("S1 coefficient matrix has rank {r}"))),
    };
    let sigma1 = Sigma1Part {
        matrix,
        rhs,
        rank,
        branch,
    };
    let sigma2 = if in_s1(p) {
        Sigma2Part::NotApplicable("point lies in S1".into())
    } else if branch == Sigma1Branch::Whole {
        Sigma2Part::NotApplicable("S1 contains the whole principal subspace".into())
    } else {
        let label = classify_u(p);
        let mut parts = Vec::new();
        for i in label.pivots() {
            let red = reduce_omegas(p, i)?;
            parts.push((i, ampleness_verdict_35(&red.as_fiber35(p), direction)?));
        }
        Sigma2Part::Delegated { label, parts }
    };
    Ok(VerdictCartan {
        direction,
        sigma1,
        sigma2,
    })
}

/// Shape of a verdict that must be preserved under relabelling coordinates.
pub fn verdict35_signature(v: &Verdict35) -> Value {
    let mut s = json!({"verdict": v.label(), "case": v.case});
    match &v.kind {
        Verdict35Kind::EmptyIntersection { rank } | Verdict35Kind::Thin { rank } => s["rank"] = json!(rank),
        Verdict35Kind::Quadric { quadrics, .. } => {
            let mut classes: Vec<(String, String)> = quadrics
                .iter()
                .map(|q| (q.classification.class.to_string(), report::rat(&q.classification.gamma2).to_string()))
                .collect();
            classes.sort();
            s["quadrics"] = json!(classes);
        }
        Verdict35Kind::AllLinearConstant { singular } => s["singular"] = json!(singular.to_string()),
        Verdict35Kind::Whole => {}
    }
    s
}
