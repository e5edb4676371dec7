//! JSON ingestion of jet fiber points.
//!
//! `{"a": [[..5..], ..], "z": [[..10..], ..]}` with two rows for the (3,5)
//! flavor and three for the Cartan flavor. Entries are JSON integers or
//! rational strings such as `"-1/3"`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::report;
use crate::scalar::{parse_rational, Rational};
use crate::strata::{JetFiberPoint35, JetFiberPointCartan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberPoint {
    C35(JetFiberPoint35),
    Cartan(JetFiberPointCartan),
}

impl FiberPoint {
    pub fn kind(&self) -> &'static str {
        match self {
            FiberPoint::C35(_) => "c35",
            FiberPoint::Cartan(_) => "cartan",
        }
    }

    pub fn to_json(&self) -> Value {
        let (a, z): (Vec<Value>, Vec<Value>) = match self {
            FiberPoint::C35(p) => (p.a.iter().map(|r| report::rats(r)).collect(), p.z.iter().map(|r| report::rats(r)).collect()),
            FiberPoint::Cartan(p) => (p.a.iter().map(|r| report::rats(r)).collect(), p.z.iter().map(|r| report::rats(r)).collect()),
        };
        json!({ "a": a, "z": z })
    }
}

fn json_error(pointer: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Json {
        pointer: pointer.into(),
        message: message.into(),
    }
}

fn entry(v: &Value, pointer: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|_| json_error(pointer, format!("invalid rational `{s}`"))),
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(i.into()))
            .ok_or_else(|| json_error(pointer, "numbers must be integers; write fractions as \"p/q\" strings")),
        _ => Err(json_error(pointer, "expected a rational")),
    }
}

fn rows<const N: usize>(root: &Value, key: &str) -> Result<Vec<[Rational; N]>> {
    let arr = root
        .get(key)
        .ok_or_else(|| json_error("", format!("missing key \"{key}\"")))?
        .as_array()
        .ok_or_else(|| json_error(format!("/{key}"), "expected an array of rows"))?;
    if !(2..=3).contains(&arr.len()) {
        return Err(json_error(format!("/{key}"), format!("expected 2 or 3 rows, got {}", arr.len())));
    }
    arr.iter()
        .enumerate()
        .map(|(i, row)| {
            let ptr = format!("/{key}/{i}");
            let cells = row.as_array().ok_or_else(|| json_error(&ptr, "expected an array"))?;
            if cells.len() != N {
                return Err(json_error(&ptr, format!("expected {N} entries, got {}", cells.len())));
            }
            let vals = cells
                .iter()
                .enumerate()
                .map(|(j, c)| entry(c, &format!("{ptr}/{j}")))
                .collect::<Result<Vec<_>>>()?;
            Ok(std::array::from_fn(|j| vals[j].clone()))
        })
        .collect()
}

pub fn parse_fiber_point(text: &str) -> Result<FiberPoint> {
    let root: Value = serde_json::from_str(text).map_err(|e| json_error("", e.to_string()))?;
    if !root.is_object() {
        return Err(json_error("", "expected an object"));
    }
    let a = rows::<5>(&root, "a")?;
    let z = rows::<10>(&root, "z")?;
    if a.len() != z.len() {
        return Err(json_error("/z", format!("expected {} rows to match \"a\", got {}", a.len(), z.len())));
    }
    Ok(if a.len() == 2 {
        FiberPoint::C35(JetFiberPoint35::new([a[0].clone(), a[1].clone()], [z[0].clone(), z[1].clone()]))
    } else {
        FiberPoint::Cartan(JetFiberPointCartan::new(
            [a[0].clone(), a[1].clone(), a[2].clone()],
            [z[0].clone(), z[1].clone(), z[2].clone()],
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn two_rows_give_35_point() {
        let text = r#"{"a":[[1,0,0,0,0],[0,1,0,0,0]],"z":[[0,0,0,0,0,0,0,0,0,1],[0,0,0,0,0,0,0,0,0,0]]}"#;
        let FiberPoint::C35(p) = parse_fiber_point(text).unwrap() else {
            panic!("wrong flavor");
        };
        assert_eq!(p.z[0][9], int(1));
        assert_eq!(p.a[1][1], int(1));
    }

    #[test]
    fn three_rows_and_strings() {
        let row5 = r#"["1/3",0,0,0,"-2"]"#;
        let row10 = "[0,0,0,0,0,0,0,0,0,0]";
        let text = format!(r#"{{"a":[{row5},{row5},{row5}],"z":[{row10},{row10},{row10}]}}"#);
        let fp = parse_fiber_point(&text).unwrap();
        let FiberPoint::Cartan(p) = &fp else { panic!("wrong flavor") };
        assert_eq!(p.a[2][0], rat(1, 3));
        assert_eq!(p.a[2][4], int(-2));
        assert_eq!(parse_fiber_point(&fp.to_json().to_string()).unwrap(), fp);
    }

    #[test]
    fn errors_point_at_the_entry() {
        let short = r#"{"a":[[1,0,0,0,0],[0,1,0,0,0]],"z":[[0,0,0,0,0,0,0,0,0,1],[0,0,0,0,0,0,0,0,0]]}"#;
        assert_eq!(
            parse_fiber_point(short),
            Err(json_error("/z/1", "expected 10 entries, got 9"))
        );
        let bad = r#"{"a":[[1,0,0,0,0],[0,1,0,0,"x"]],"z":[[0,0,0,0,0,0,0,0,0,1],[0,0,0,0,0,0,0,0,0,0]]}"#;
        assert!(matches!(parse_fiber_point(bad), Err(Error::Json { pointer, .. }) if pointer == "/a/1/4"));
        let float = r#"{"a":[[1.5,0,0,0,0],[0,1,0,0,0]],"z":[[0,0,0,0,0,0,0,0,0,1],[0,0,0,0,0,0,0,0,0,0]]}"#;
        assert!(matches!(parse_fiber_point(float), Err(Error::Json { pointer, .. }) if pointer == "/a/0/0"));
        let mismatch = r#"{"a":[[1,0,0,0,0],[0,1,0,0,0]],"z":[[0,0,0,0,0,0,0,0,0,1],[0,0,0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0,0,0]]}"#;
        assert!(matches!(parse_fiber_point(mismatch), Err(Error::Json { pointer, .. }) if pointer == "/z"));
        assert!(parse_fiber_point("[1]").is_err());
        assert!(parse_fiber_point("{").is_err());
    }
}
