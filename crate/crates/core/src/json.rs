//! JSON forms: `{"dist": [...]}` for vectors, `{"rows": [[...]]}` for channels,
//! and `{"value": .., "exact_infinite": ..}` for extended reals.
//!
//! Rationals are written as `"n/d"` strings. On input, strings and JSON
//! numbers are both accepted; numbers are read from their decimal text, never
//! through a float.

use serde_json::{json, Value};

use crate::error::{MajorError, Result};
use crate::prob::{Channel, ExtReal, ProbVec};
use crate::rational::{format_rational, parse_rational, Rational};

fn rational_from(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(MajorError::Parse(format!("expected a number, found {other}"))),
    }
}

fn rationals_from(v: &Value) -> Result<Vec<Rational>> {
    v.as_array()
        .ok_or_else(|| MajorError::Parse("expected an array".into()))?
        .iter()
        .map(rational_from)
        .collect()
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn prob_vec_from_json(v: &Value) -> Result<ProbVec> {
    let dist = v
        .get("dist")
        .ok_or_else(|| MajorError::Parse("missing \"dist\"".into()))?;
    ProbVec::new(rationals_from(dist)?)
}

pub fn prob_vec_to_json(p: &ProbVec) -> Value {
    json!({ "dist": strings(p.entries()) })
}

pub fn channel_from_json(v: &Value) -> Result<Channel> {
    let rows = v
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| MajorError::Parse("missing \"rows\"".into()))?;
    Channel::new(rows.iter().map(rationals_from).collect::<Result<_>>()?)
}

pub fn channel_to_json(w: &Channel) -> Value {
    json!({ "rows": w.rows().iter().map(|r| strings(r)).collect::<Vec<_>>() })
}

/// `{"value": x, "exact_infinite": false, "bits": true}`, with `null` for `+∞`.
pub fn ext_real_to_json(x: ExtReal) -> Value {
    json!({
        "value": x.finite(),
        "exact_infinite": x.is_infinite(),
        "bits": true,
    })
}

pub fn parse_prob_vec(text: &str) -> Result<ProbVec> {
    let v: Value = serde_json::from_str(text).map_err(|e| MajorError::Parse(e.to_string()))?;
    prob_vec_from_json(&v)
}

pub fn parse_channel(text: &str) -> Result<Channel> {
    let v: Value = serde_json::from_str(text).map_err(|e| MajorError::Parse(e.to_string()))?;
    channel_from_json(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn vector_round_trip() {
        let p = parse_prob_vec(r#"{"dist": ["1/3", "1/4", 0.25, "1/6"]}"#).unwrap();
        assert_eq!(p.get(2), &rat(1, 4));
        let v = prob_vec_to_json(&p);
        assert_eq!(v, json!({"dist": ["1/3", "1/4", "1/4", "1/6"]}));
        assert_eq!(prob_vec_from_json(&v).unwrap(), p);
    }

    #[test]
    fn decimal_numbers_are_exact() {
        let p = parse_prob_vec(r#"{"dist": [0.4, 0.6]}"#).unwrap();
        assert_eq!(p.entries(), &[rat(2, 5), rat(3, 5)]);
    }

    #[test]
    fn channel_round_trip() {
        let w = parse_channel(r#"{"rows": [["1","0"],["1/2","1/2"]]}"#).unwrap();
        assert_eq!(channel_from_json(&channel_to_json(&w)).unwrap(), w);
    }

    #[test]
    fn infinity_form() {
        assert_eq!(
            ext_real_to_json(ExtReal::INFINITY),
            json!({"value": null, "exact_infinite": true, "bits": true})
        );
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_prob_vec("{}").is_err());
        assert!(parse_prob_vec(r#"{"dist": [true]}"#).is_err());
        assert!(parse_prob_vec(r#"{"dist": ["1/2"]}"#).is_err());
        assert!(parse_channel(r#"{"rows": 3}"#).is_err());
    }
}
