use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn cartan(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cartan")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let (code, stdout, stderr) = cartan(&all);
    assert_eq!(code, 0, "{stderr}");
    serde_json::from_str(&stdout).unwrap()
}

#[test]
fn hilbert_cartan_checks() {
    let hc = fixture("hilbert_cartan.chart");
    let v = json(&["check", "structure", &hc]);
    assert_eq!(v["generic"]["holds"], Value::Bool(true));
    let v = json(&["check", "cartan", &hc]);
    assert_eq!(v["generic"]["holds"], Value::Bool(true));
    assert!(v["points"].as_array().unwrap().iter().all(|p| p["verdict"] == Value::Bool(true)));
    let v = json(&["flag", &hc, "--mode", "strong", "--depth", "3", "--forms", "a1,a2,a3"]);
    for p in v["points"].as_array().unwrap() {
        assert_eq!(p["verdict"], serde_json::json!([2, 3, 5]));
    }
    let v = json(&["check", "almost-cartan", &fixture("almost.chart")]);
    assert_eq!(v["generic"]["holds_at_all_points"], Value::Bool(true));
}

#[test]
fn false_verdicts_still_exit_zero() {
    // (a4, a5, a1) is not a Cartan coframe: its derived flag stalls.
    let v = json(&["check", "cartan", &fixture("hilbert_cartan.chart"), "--forms", "a4,a5,a1"]);
    assert_eq!(v["generic"]["holds"], Value::Bool(false));
}

#[test]
fn points_file_overrides_document_points() {
    let dir = std::env::temp_dir().join(format!("cartan-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let pts = dir.join("pts.txt");
    std::fs::write(&pts, "# one point\n1/2, 0, -1, 2, 0\n").unwrap();
    let v = json(&["check", "cartan", &fixture("hilbert_cartan.chart"), "--points", pts.to_str().unwrap()]);
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 1);
    assert_eq!(points[0]["point"], serde_json::json!(["1/2", "0", "-1", "2", "0"]));
}

#[test]
fn fiber_commands() {
    let v = json(&["stratum", &fixture("c35_s_tilde.json")]);
    assert_eq!(v["points"][0]["detail"]["in_s_tilde"], Value::Bool(true));
    let v = json(&["stratum", &fixture("cartan_u1.json")]);
    assert_eq!(v["points"][0]["detail"]["stratum"], "U1_3");
    let v = json(&["ample", &fixture("c35_quadric.json"), "--direction", "2", "--kind", "c35"]);
    assert_eq!(v["points"][0]["detail"]["verdict"], "ample-quadric");
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn obstruction_examples() {
    for (betti, spin, expected) in [("1,0,0,0,0,1", "yes", false), ("1,0,1,1,0,1", "yes", true), ("1,1,1,1,1,1", "yes", true)] {
        let v = json(&["obstruction", "--betti", betti, "--spin", spin]);
        assert_eq!(v["generic"]["closed_existence"], Value::Bool(expected), "{betti}");
    }
    let v = json(&["obstruction", "--betti", "1,0,1,1,0,1", "--spin", "no"]);
    assert_eq!(v["generic"]["closed_existence"], Value::Bool(false));
    let v = json(&["obstruction", "--betti", "1,0,0,0,0,1", "--spin", "yes", "--e2", "u", "--halfp1", "u"]);
    assert_eq!(v["generic"]["euler_condition"], Value::Bool(true));
}

#[test]
fn help_exits_zero() {
    let (code, stdout, _) = cartan(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("witness"));
}

#[test]
fn negative_corpus_exits_one() {
    let bad = |n: &str| fixture(&format!("bad/{n}"));
    let cases: Vec<Vec<String>> = vec![
        vec!["check".into(), "cartan".into(), bad("arity.chart")],
        vec!["check".into(), "cartan".into(), bad("unknown.chart")],
        vec!["check".into(), "cartan".into(), bad("degree.chart")],
        vec!["check".into(), "cartan".into(), bad("syntax.chart")],
        vec!["check".into(), "cartan".into(), bad("nochart.chart")],
        vec!["check".into(), "cartan".into(), fixture("hilbert_cartan.chart"), "--points".into(), bad("short.points")],
        vec!["check".into(), "cartan".into(), fixture("hilbert_cartan.chart"), "--forms".into(), "a1,nope,a3".into()],
        vec!["check".into(), "cartan".into(), fixture("missing.chart")],
        vec!["stratum".into(), bad("short_z.json")],
        vec!["stratum".into(), bad("zero_den.json")],
        vec!["ample".into(), fixture("cartan_u1.json"), "--direction".into(), "1".into(), "--kind".into(), "c35".into()],
        vec!["ample".into(), fixture("c35_quadric.json"), "--direction".into(), "0".into(), "--kind".into(), "c35".into()],
        vec!["witness".into(), "--form".into(), "cone".into(), "--point".into(), "1,0,0,0,0,0,0,0".into(), "--side".into(), "+".into()],
        vec!["witness".into(), "--form".into(), "cone".into(), "--point".into(), "0,0,0".into(), "--side".into(), "+".into()],
        vec!["witness".into(), "--form".into(), "cone".into(), "--point".into(), "0,0,0,0,0,0,0,0".into(), "--side".into(), "+".into(), "--eps".into(), "0".into()],
        vec!["obstruction".into(), "--betti".into(), "1,0,1".into(), "--spin".into(), "yes".into()],
        vec!["obstruction".into(), "--betti".into(), "1,0,0,0,0,1".into(), "--spin".into(), "maybe".into()],
        vec!["obstruction".into(), "--betti".into(), "1,0,0,0,0,1".into(), "--spin".into(), "yes".into(), "--e2".into(), "u".into()],
        vec!["sweep".into(), "--kind".into(), "case2".into(), "--samples".into(), "1".into(), "--seed".into(), "1".into()],
        vec!["frobnicate".into()],
        vec![],
    ];
    for args in cases {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, stdout, stderr) = cartan(&refs);
        assert_eq!(code, 1, "{args:?}: {stderr}");
        assert!(stdout.is_empty(), "{args:?}");
        assert!(!stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let hc = fixture("hilbert_cartan.chart");
    let runs: [&[&str]; 4] = [
        &["check", "structure", &hc, "--json"],
        &["ample", &fixture("c35_quadric.json"), "--direction", "3", "--kind", "c35", "--json"],
        &["sweep", "--kind", "sigma1", "--samples", "300", "--seed", "11", "--json"],
        &["flag", &hc, "--mode", "weak", "--depth", "3", "--forms", "a1,a2,a3"],
    ];
    for args in runs {
        assert_eq!(cartan(args), cartan(args), "{args:?}");
    }
}
