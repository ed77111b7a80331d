//! Report primitives shared by the verification suite and the CLI: named
//! pass/fail checks and deterministic JSON rendering (sorted keys, rationals
//! as strings).

use crate::scalar::ExactScalar;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            witness: witness.into(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "pass": self.pass,
            "witness": self.witness,
        })
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

/// Render a scalar the way reports expect: "p/q" for rationals, with an
/// explicit `*sqrt3` component otherwise.
pub fn scalar_string(s: &ExactScalar) -> String {
    s.to_string()
}

pub fn scalar_json(s: &ExactScalar) -> Value {
    Value::String(scalar_string(s))
}

pub fn scalars_json(v: &[ExactScalar]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

/// The standard report envelope: {subcommand, input, result, checks}.
pub fn envelope(subcommand: &str, input: &str, result: Value, checks: &[Check]) -> Value {
    let mut map = Map::new();
    map.insert("subcommand".into(), Value::String(subcommand.into()));
    map.insert("input".into(), Value::String(input.into()));
    map.insert("result".into(), result);
    map.insert(
        "checks".into(),
        Value::Array(checks.iter().map(Check::to_json).collect()),
    );
    Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_keys_are_sorted() {
        let v = envelope("betti", "preset:N", json!([1, 2, 1]), &[]);
        let s = serde_json::to_string(&v).unwrap();
        let checks_pos = s.find("\"checks\"").unwrap();
        let input_pos = s.find("\"input\"").unwrap();
        let result_pos = s.find("\"result\"").unwrap();
        let sub_pos = s.find("\"subcommand\"").unwrap();
        assert!(checks_pos < input_pos && input_pos < result_pos && result_pos < sub_pos);
    }

    #[test]
    fn rationals_render_as_strings() {
        assert_eq!(scalar_string(&ExactScalar::ratio(-4, 3)), "-4/3");
        assert_eq!(
            scalar_json(&ExactScalar::ratio(1, 2)),
            Value::String("1/2".into())
        );
    }
}
