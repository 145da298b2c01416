//! Canonical JSON rendering: rationals as `"p/q"` strings, series as
//! `{lowest_s_exponent, coefficients, order}`; no floats.

use std::fmt::Display;

use serde_json::{json, Map, Value};

use crate::series::rational::{self, Rational};
use crate::series::{Laurent, Ring};

pub fn rat(q: &Rational) -> Value {
    Value::String(rational::format(q))
}

/// Coefficients from the lowest stored exponent up to the truncation.
pub fn series<R: Ring + Display>(s: &Laurent<R>) -> Value {
    let lo = s.lowest_exponent();
    let hi = s.order().unwrap_or(lo + s.coefficients().len() as i64);
    let coeffs: Vec<Value> = (lo..hi).map(|e| Value::String(s.coeff(e).to_string())).collect();
    json!({
        "lowest_s_exponent": lo,
        "coefficients": coeffs,
        "order": s.order(),
    })
}

/// Flatten nested JSON into `(path, scalar)` rows for CSV and text output.
pub fn flatten(v: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    walk(v, String::new(), &mut out);
    out
}

fn walk(v: &Value, path: String, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                walk(x, join(k), out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                walk(x, join(&i.to_string()), out);
            }
        }
        Value::String(s) => out.push((path, s.clone())),
        Value::Null => out.push((path, "null".into())),
        other => out.push((path, other.to_string())),
    }
}

pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::{int, rat as r};
    use crate::series::QSeries;

    #[test]
    fn series_shape() {
        let s = QSeries::new(-2, vec![int(1), int(0), r(-1, 8)], Some(2));
        let v = series(&s);
        assert_eq!(v["lowest_s_exponent"], -2);
        assert_eq!(v["coefficients"], json!(["1", "0", "-1/8", "0"]));
        assert_eq!(v["order"], 2);
    }

    #[test]
    fn flatten_paths() {
        let v = json!({"a": {"b": [1, "x"]}, "c": null});
        assert_eq!(
            flatten(&v),
            vec![("a.b.0".into(), "1".into()), ("a.b.1".into(), "x".into()), ("c".into(), "null".into())]
        );
    }
}
