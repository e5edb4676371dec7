//! Command line dispatch.
//!
//! Exit codes: 0 when a report was computed (whatever the verdict), 1 for
//! input and usage errors, 2 for internal invariant violations.

use std::collections::BTreeMap;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde_json::{json, Value};

use crate::ampleness::{self, hull_witness, verify_witness, NormalForm, Side, Verdict35Kind};
use crate::distribution::{self, Coframe, FlagMode, Frame, STRUCTURE_EQUATIONS};
use crate::dsl::{self, ChartDocument, Item};
use crate::error::{Error, Result};
use crate::exterior::{KForm, Point, VectorField};
use crate::fiber::{parse_fiber_point, FiberPoint};
use crate::obstruction::{self, CohomologyData};
use crate::random;
use crate::report::{self, PointResult, Report};
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::strata::{self, ULabel};

#[derive(Parser, Debug)]
#[command(name = "cartan", version, about = "Exact checks for Cartan and (3,5) distributions on 5-dimensional charts")]
struct Cli {
    /// Emit the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check coframe conditions of a chart document.
    Check(CheckArgs),
    /// Ranks of the derived flag.
    Flag(FlagArgs),
    /// S1 / U / S2 classification of a fiber point.
    Stratum { file: String },
    /// Ampleness verdict on a principal subspace.
    Ample(AmpleArgs),
    /// Convex-hull witness for a quadric normal form.
    Witness(WitnessArgs),
    /// Existence verdict from cohomology data of a closed 5-manifold.
    Obstruction(ObstructionArgs),
    /// Seeded rank histograms.
    Sweep(SweepArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum CheckKind {
    Cartan,
    C35,
    Structure,
    AlmostCartan,
}

#[derive(Args, Debug)]
struct CheckArgs {
    kind: CheckKind,
    file: String,
    /// Points file: one point per line, comma-separated.
    #[arg(long)]
    points: Option<String>,
    /// Comma-separated names of the forms to use, in order.
    #[arg(long)]
    forms: Option<String>,
    /// almost-cartan: take the omegas to be the differentials of the alphas.
    #[arg(long)]
    induced: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Weak,
    Strong,
}

#[derive(Args, Debug)]
struct FlagArgs {
    file: String,
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(long)]
    depth: usize,
    #[arg(long)]
    points: Option<String>,
    /// Comma-separated field names spanning the distribution.
    #[arg(long)]
    fields: Option<String>,
    /// Comma-separated 1-form names whose kernel is the distribution.
    #[arg(long)]
    forms: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FiberKind {
    C35,
    Cartan,
}

#[derive(Args, Debug)]
struct AmpleArgs {
    file: String,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
    direction: u8,
    #[arg(long, value_enum)]
    kind: FiberKind,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormArg {
    Cone,
    Hyperboloid,
    Paraboloid,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SideArg {
    #[value(name = "+")]
    Plus,
    #[value(name = "-")]
    Minus,
}

#[derive(Args, Debug)]
struct WitnessArgs {
    #[arg(long, value_enum)]
    form: FormArg,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    c: String,
    /// Eight comma-separated rationals.
    #[arg(long, allow_hyphen_values = true)]
    point: String,
    #[arg(long, value_enum, allow_hyphen_values = true)]
    side: SideArg,
    #[arg(long, default_value = "1")]
    eps: String,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum YesNo {
    Yes,
    No,
}

#[derive(Args, Debug)]
struct ObstructionArgs {
    /// b0,...,b5
    #[arg(long)]
    betti: String,
    #[arg(long, value_enum)]
    spin: YesNo,
    /// Label of the class e^2.
    #[arg(long)]
    e2: Option<String>,
    /// Label of the class p1/2.
    #[arg(long)]
    halfp1: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SweepKind {
    Case1,
    Sigma1,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, value_enum)]
    kind: SweepKind,
    #[arg(long)]
    samples: usize,
    #[arg(long)]
    seed: u64,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the tool on `args` (without the program name).
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(std::iter::once("cartan".to_string()).chain(args.iter().cloned())) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: 0, stdout: text, stderr: String::new() },
                _ => Outcome { code: 1, stdout: String::new(), stderr: text },
            };
        }
    };
    let echo = args.join(" ");
    match dispatch(&cli.command, echo) {
        Ok(rep) => Outcome {
            code: 0,
            stdout: if cli.json { rep.render_json() } else { rep.render_text() },
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(cmd: &Command, echo: String) -> Result<Report> {
    let mut rep = Report::new(echo);
    match cmd {
        Command::Check(a) => check(a, &mut rep)?,
        Command::Flag(a) => flag(a, &mut rep)?,
        Command::Stratum { file } => stratum(file, &mut rep)?,
        Command::Ample(a) => ample(a, &mut rep)?,
        Command::Witness(a) => witness(a, &mut rep)?,
        Command::Obstruction(a) => obstruct(a, &mut rep)?,
        Command::Sweep(a) => sweep(a, &mut rep)?,
    }
    Ok(rep)
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))
}

fn load_points(doc: &ChartDocument, file: Option<&str>) -> Result<Vec<Point>> {
    if let Some(f) = file {
        return dsl::parse_points_file(&read(f)?);
    }
    let pts = doc.points();
    Ok(if pts.is_empty() { vec![Point::origin()] } else { pts })
}

fn names(list: &str) -> Vec<&str> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn named_forms(doc: &ChartDocument, list: &str) -> Result<Vec<(String, KForm)>> {
    names(list)
        .into_iter()
        .map(|n| match doc.get(n) {
            Some(Item::Form(f)) => Ok((n.to_string(), f.clone())),
            Some(_) => Err(Error::Contract(format!("`{n}` is not a form"))),
            None => Err(Error::Contract(format!("no form named `{n}`"))),
        })
        .collect()
}

/// Forms of the given degree in declaration order.
fn forms_of_degree(doc: &ChartDocument, degree: usize) -> Vec<(String, KForm)> {
    doc.forms()
        .into_iter()
        .filter(|(_, f)| f.degree() == degree)
        .map(|(n, f)| (n.to_string(), f.clone()))
        .collect()
}

fn take(mut forms: Vec<(String, KForm)>, n: usize, what: &str) -> Result<Vec<(String, KForm)>> {
    if forms.len() < n {
        return Err(Error::Contract(format!("need {n} {what}, the document has {}", forms.len())));
    }
    forms.truncate(n);
    Ok(forms)
}

fn forms_json(doc: &ChartDocument, forms: &[(String, KForm)]) -> Value {
    let m: BTreeMap<&str, String> = forms.iter().map(|(n, f)| (n.as_str(), f.fmt_with(&doc.coords))).collect();
    json!(m)
}

fn conditions_json(c: &[distribution::Condition]) -> Value {
    let m: BTreeMap<&str, bool> = c.iter().map(|c| (c.name, c.holds)).collect();
    json!(m)
}

fn check(a: &CheckArgs, rep: &mut Report) -> Result<()> {
    let doc = dsl::parse_chart(&read(&a.file)?)?;
    let points = load_points(&doc, a.points.as_deref())?;
    let (needed, selected) = match a.kind {
        CheckKind::Cartan => (3, None),
        CheckKind::C35 => (2, None),
        CheckKind::Structure => (5, None),
        CheckKind::AlmostCartan if a.induced => (3, None),
        CheckKind::AlmostCartan => {
            let forms = match &a.forms {
                Some(list) => named_forms(&doc, list)?,
                None => {
                    let mut v = take(forms_of_degree(&doc, 1), 3, "1-forms")?;
                    v.extend(take(forms_of_degree(&doc, 2), 3, "2-forms")?);
                    v
                }
            };
            (6, Some(forms))
        }
    };
    let forms = match selected {
        Some(f) => f,
        None => match &a.forms {
            Some(list) => named_forms(&doc, list)?,
            None => take(forms_of_degree(&doc, 1), needed, "1-forms")?,
        },
    };
    if forms.len() != needed {
        return Err(Error::Contract(format!("expected {needed} forms, got {}", forms.len())));
    }
    rep.certificates = json!({ "forms": forms_json(&doc, &forms) });
    let only: Vec<KForm> = forms.iter().map(|(_, f)| f.clone()).collect();
    match a.kind {
        CheckKind::Cartan | CheckKind::C35 => {
            let c = Coframe::new(only)?;
            let v = if a.kind == CheckKind::Cartan {
                distribution::is_cartan_coframe(&c, &points)?
            } else {
                distribution::is_35_coframe(&c, &points)?
            };
            rep.generic = json!({ "holds": v.generic_holds, "conditions": conditions_json(&v.generic) });
            rep.points = v
                .points
                .iter()
                .map(|p| PointResult {
                    point: report::point(&p.point),
                    verdict: json!(p.holds),
                    detail: conditions_json(&p.conditions),
                })
                .collect();
        }
        CheckKind::Structure => {
            let v = distribution::check_structure_equations(&Coframe::new(only)?, &points)?;
            let flags = |b: &[bool; 3]| -> Value {
                let m: BTreeMap<&str, bool> = STRUCTURE_EQUATIONS.iter().copied().zip(b.iter().copied()).collect();
                json!(m)
            };
            rep.generic = json!({
                "holds": v.congruences.iter().all(|b| *b),
                "congruences": flags(&v.congruences),
                "exact_equalities": flags(&v.exact_equalities),
            });
            rep.points = v
                .points
                .iter()
                .map(|p| PointResult {
                    point: report::point(&p.point),
                    verdict: json!(p.coframe && p.congruences.iter().all(|b| *b)),
                    detail: json!({ "coframe": p.coframe, "congruences": flags(&p.congruences) }),
                })
                .collect();
        }
        CheckKind::AlmostCartan => {
            let tuple = if a.induced {
                distribution::induced_almost_cartan(&Coframe::new(only)?)?
            } else {
                for (i, (n, f)) in forms.iter().enumerate() {
                    let want = if i < 3 { 1 } else { 2 };
                    if f.degree() != want {
                        return Err(Error::Contract(format!("`{n}` must have degree {want}")));
                    }
                }
                distribution::AlmostCartanTuple {
                    alphas: std::array::from_fn(|i| only[i].clone()),
                    omegas: std::array::from_fn(|i| only[i + 3].clone()),
                }
            };
            let res = distribution::check_almost_cartan(&tuple, &points)?;
            rep.generic = json!({ "holds_at_all_points": res.iter().all(|p| p.holds) });
            rep.points = res
                .iter()
                .map(|p| PointResult {
                    point: report::point(&p.point),
                    verdict: json!(p.holds),
                    detail: json!({ "failed": p.reasons }),
                })
                .collect();
        }
    }
    Ok(())
}

fn flag(a: &FlagArgs, rep: &mut Report) -> Result<()> {
    let doc = dsl::parse_chart(&read(&a.file)?)?;
    let points = load_points(&doc, a.points.as_deref())?;
    let fields: Vec<VectorField> = match &a.fields {
        Some(list) => names(list)
            .into_iter()
            .map(|n| match doc.get(n) {
                Some(Item::Field(v)) => Ok(v.clone()),
                _ => Err(Error::Contract(format!("no field named `{n}`"))),
            })
            .collect::<Result<_>>()?,
        None => doc.fields().into_iter().map(|(_, v)| v.clone()).collect(),
    };
    let frame = if fields.is_empty() || a.forms.is_some() {
        let forms = match &a.forms {
            Some(list) => named_forms(&doc, list)?,
            None => forms_of_degree(&doc, 1),
        };
        distribution::kernel_frame(&Coframe::new(forms.into_iter().map(|(_, f)| f).collect())?, &points)?
    } else {
        Frame(fields)
    };
    let mode = match a.mode {
        ModeArg::Weak => FlagMode::Weak,
        ModeArg::Strong => FlagMode::Strong,
    };
    let r = distribution::derived_flag(&frame, mode, a.depth, &points)?;
    rep.generic = json!({ "mode": mode.to_string(), "depth": a.depth });
    rep.certificates = json!({ "frame": frame.0.iter().map(|v| v.fmt_with(&doc.coords)).collect::<Vec<_>>() });
    rep.points = r
        .ranks_at_points
        .iter()
        .enumerate()
        .map(|(i, (p, ranks))| PointResult {
            point: report::point(p),
            verdict: json!(ranks),
            detail: json!({ "frame_degenerate": r.degenerate_points.contains(&i) }),
        })
        .collect();
    Ok(())
}

fn stratum(file: &str, rep: &mut Report) -> Result<()> {
    let fp = parse_fiber_point(&read(file)?)?;
    match &fp {
        FiberPoint::C35(p) => {
            let member = strata::in_s_tilde(p);
            rep.points.push(PointResult {
                point: fp.to_json(),
                verdict: json!(if member { "singular" } else { "regular" }),
                detail: json!({ "kind": fp.kind(), "in_s_tilde": member }),
            });
            rep.certificates = json!({
                "b": p.b_rows().iter().map(|r| report::rats(r)).collect::<Vec<_>>(),
                "f": report::rats(&p.f_values()),
            });
        }
        FiberPoint::Cartan(p) => {
            let label = strata::classify_u(p);
            let mut detail = json!({ "kind": fp.kind(), "stratum": label.to_string(), "in_s1": label == ULabel::S1 });
            if label == ULabel::S1 {
                detail["in_s2"] = Value::Null;
            } else {
                let s2 = strata::in_s2(p)?;
                let parts: BTreeMap<String, bool> = s2.parts.iter().map(|(i, b)| (format!("S2^{i}"), *b)).collect();
                detail["in_s2"] = json!(s2.member);
                detail["s2_parts"] = json!(parts);
                if label == ULabel::U3 {
                    rep.warnings.push(
                        "on U3_123 the third factor of the intersection is read as S2^3 (the 3-index variant is undefined)".into(),
                    );
                }
            }
            let verdict = match &detail["in_s2"] {
                Value::Bool(true) => "S2".to_string(),
                _ => label.to_string(),
            };
            rep.points.push(PointResult { point: fp.to_json(), verdict: json!(verdict), detail });
            rep.certificates = json!({ "five_forms": report::rats(&p.five_forms()) });
        }
    }
    Ok(())
}

const GAMMA_NOTE: &str =
    "gamma^2 is computed as tr(G^2)/4; its closed form carries A24^2 in the first sum (an A23^2 variant disagrees with the characteristic polynomial of G)";

fn mentions_quadric(v: &ampleness::Verdict35) -> bool {
    matches!(v.kind, Verdict35Kind::Quadric { .. })
}

fn ample(a: &AmpleArgs, rep: &mut Report) -> Result<()> {
    let fp = parse_fiber_point(&read(&a.file)?)?;
    let d = usize::from(a.direction);
    let (verdict, detail, quadric) = match (&fp, a.kind) {
        (FiberPoint::C35(p), FiberKind::C35) => {
            let v = ampleness::ampleness_verdict_35(p, d)?;
            (json!(v.ample()), v.to_json(), mentions_quadric(&v))
        }
        (FiberPoint::Cartan(p), FiberKind::Cartan) => {
            let v = ampleness::ampleness_verdict_cartan(p, d)?;
            let q = match &v.sigma2 {
                ampleness::Sigma2Part::Delegated { parts, .. } => parts.iter().any(|(_, v)| mentions_quadric(v)),
                ampleness::Sigma2Part::NotApplicable(_) => false,
            };
            (json!(v.ample()), v.to_json(), q)
        }
        _ => {
            return Err(Error::Contract(format!(
                "--kind does not match the fiber point, which has {} rows",
                if fp.kind() == "c35" { 2 } else { 3 }
            )))
        }
    };
    if quadric {
        rep.warnings.push(GAMMA_NOTE.into());
    }
    rep.points.push(PointResult { point: fp.to_json(), verdict, detail });
    Ok(())
}

fn rational_arg(s: &str, what: &str) -> Result<Rational> {
    parse_rational(s).map_err(|_| Error::Rational(format!("{what}: {s}")))
}

fn witness(a: &WitnessArgs, rep: &mut Report) -> Result<()> {
    let c = rational_arg(&a.c, "--c")?;
    let form = match a.form {
        FormArg::Cone => NormalForm::Cone,
        FormArg::Hyperboloid => NormalForm::Hyperboloid(c.clone()),
        FormArg::Paraboloid => NormalForm::Paraboloid,
    };
    if !matches!(a.form, FormArg::Hyperboloid) && c != Rational::from_integer(0.into()) {
        rep.warnings.push(format!("--c {} is ignored for the {} normal form", format_rational(&c), form.name()));
    }
    let point = dsl::parse_rational_list(&a.point)?;
    let side = match a.side {
        SideArg::Plus => Side::Plus,
        SideArg::Minus => Side::Minus,
    };
    let eps = rational_arg(&a.eps, "--eps")?;
    let w = hull_witness(&form, &point, side, &eps)?;
    let ok = verify_witness(&w, &form);
    if !ok {
        return Err(Error::Invariant("constructed witness failed verification".into()));
    }
    rep.points.push(PointResult {
        point: report::rats(&point),
        verdict: json!(ok),
        detail: w.to_json(),
    });
    Ok(())
}

fn obstruct(a: &ObstructionArgs, rep: &mut Report) -> Result<()> {
    let betti: Vec<u64> = a
        .betti
        .split(',')
        .map(|s| s.trim().parse::<u64>().map_err(|_| Error::Shape(format!("invalid Betti number `{}`", s.trim()))))
        .collect::<Result<_>>()?;
    let mut data = CohomologyData::new(&betti, matches!(a.spin, YesNo::Yes))?;
    data.e_squared = a.e2.clone();
    data.half_p1 = a.halfp1.clone();
    let kappa = obstruction::kervaire_semicharacteristic(&data.betti);
    let verdict = obstruction::existence_verdict_closed(data.spin, kappa);
    let mut generic = json!({ "kappa": kappa, "spin": data.spin, "closed_existence": verdict });
    match (&data.e_squared, &data.half_p1) {
        (Some(e), Some(p)) => generic["euler_condition"] = json!(obstruction::euler_condition(e, p)),
        (None, None) => {}
        _ => return Err(Error::Contract("--e2 and --halfp1 must be given together".into())),
    }
    rep.generic = generic;
    rep.warnings = data.warnings();
    rep.warnings.push("kappa is (b0 + b2) mod 2, summing even degrees up to half the dimension".into());
    Ok(())
}

fn sweep(a: &SweepArgs, rep: &mut Report) -> Result<()> {
    let mut rng = random::seeded(a.seed);
    let (max_rank, allowed): (usize, &[usize]) = match a.kind {
        SweepKind::Case1 => (4, &[0, 2, 3, 4]),
        SweepKind::Sigma1 => (3, &[0, 3]),
    };
    let mut hist = vec![0u64; max_rank + 1];
    for _ in 0..a.samples {
        let rank = match a.kind {
            SweepKind::Case1 => {
                let t = random::free_table2(&mut rng);
                let b = loop {
                    let b = [random::sparse_rational(&mut rng, 0.3), random::sparse_rational(&mut rng, 0.3)];
                    if b.iter().any(|x| *x != Rational::from_integer(0.into())) {
                        break b;
                    }
                };
                strata::exact_rank(&strata::case1_matrix(&t, &b))
            }
            SweepKind::Sigma1 => {
                let t = random::free_table3(&mut rng);
                let d = rng.gen_range(1..=5);
                let z: [strata::Row10; 3] = std::array::from_fn(|_| std::array::from_fn(|_| random::small_rational(&mut rng)));
                strata::exact_rank(&strata::sigma1_principal_system(&t, d, &z)?.0)
            }
        };
        hist[rank] += 1;
    }
    let kind = match a.kind {
        SweepKind::Case1 => "case1",
        SweepKind::Sigma1 => "sigma1",
    };
    let histogram: BTreeMap<String, u64> = hist.iter().enumerate().map(|(r, n)| (r.to_string(), *n)).collect();
    rep.generic = json!({ "kind": kind, "samples": a.samples, "seed": a.seed, "histogram": histogram });
    if let Some(r) = (0..=max_rank).find(|r| hist[*r] > 0 && !allowed.contains(r)) {
        return Err(Error::Invariant(format!("{kind} sweep produced rank {r}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn obstruction_examples() {
        let out = run(["obstruction", "--betti", "1,0,1,1,0,1", "--spin", "yes", "--json"]);
        assert_eq!(out.code, 0);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["generic"]["closed_existence"], json!(true));
        assert_eq!(v["generic"]["kappa"], json!(0));
    }

    #[test]
    fn witness_example() {
        let out = run(["witness", "--form", "cone", "--c", "0", "--point", "0,0,0,0,0,0,0,0", "--side", "+", "--eps", "1", "--json"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        let d = &v["points"][0]["detail"];
        assert_eq!(v["points"][0]["verdict"], json!(true));
        assert_eq!(d["p1"], json!(["1", "0", "0", "0", "0", "0", "0", "0"]));
        assert_eq!(d["p2"], json!(["-1", "0", "0", "0", "0", "0", "0", "0"]));
    }

    #[test]
    fn negative_coordinates_are_values() {
        let out = run(["witness", "--form", "hyperboloid", "--c", "-1", "--point", "-1/2,0,3,0,0,0,0,0", "--side", "-", "--eps", "1/4"]);
        assert_eq!(out.code, 1, "{}", out.stderr);
        let out = run(["witness", "--form", "hyperboloid", "--c", "-1", "--point", "-1/2,0,0,0,0,0,0,0", "--side", "-", "--eps", "1/4"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(["--help"]).code, 0);
        assert_eq!(run(["bogus"]).code, 1);
        assert_eq!(run(["obstruction", "--betti", "1,0,1", "--spin", "yes"]).code, 1);
        assert_eq!(run(["check", "cartan", "/nonexistent/file"]).code, 1);
        assert_eq!(run(["ample", "x.json", "--direction", "6", "--kind", "c35"]).code, 1);
    }

    #[test]
    fn sweep_is_deterministic() {
        let a = run(["sweep", "--kind", "case1", "--samples", "200", "--seed", "7", "--json"]);
        let b = run(["sweep", "--kind", "case1", "--samples", "200", "--seed", "7", "--json"]);
        assert_eq!(a.code, 0, "{}", a.stderr);
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a.stdout).unwrap();
        assert_eq!(v["generic"]["histogram"]["1"], json!(0));
    }
}
