//! Command reports and their deterministic JSON and text renderings.
//!
//! `serde_json` maps are ordered by key, so the JSON output is byte-stable;
//! rationals are always written as canonical strings.

use serde_json::{json, Value};

use crate::exterior::Point;
use crate::linalg::Matrix;
use crate::scalar::{format_rational, Rational};

pub fn rat(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn rats(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| rats(m.row(i))).collect())
}

pub fn point(p: &Point) -> Value {
    rats(p.coords())
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointResult {
    pub point: Value,
    pub verdict: Value,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub generic: Value,
    pub points: Vec<PointResult>,
    pub certificates: Value,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            generic: Value::Null,
            points: Vec::new(),
            certificates: Value::Null,
            warnings: Vec::new(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "generic": self.generic,
            "points": self.points.iter().map(|p| json!({
                "point": p.point,
                "verdict": p.verdict,
                "detail": p.detail,
            })).collect::<Vec<_>>(),
            "certificates": self.certificates,
            "warnings": self.warnings,
        })
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        if !self.generic.is_null() {
            out.push_str(&format!("generic: {}\n", compact(&self.generic)));
        }
        for (i, p) in self.points.iter().enumerate() {
            out.push_str(&format!("point {} {}: {}\n", i + 1, compact(&p.point), compact(&p.verdict)));
            if !p.detail.is_null() {
                out.push_str(&format!("  detail: {}\n", compact(&p.detail)));
            }
        }
        if !self.certificates.is_null() {
            out.push_str(&format!("certificates: {}\n", compact(&self.certificates)));
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
