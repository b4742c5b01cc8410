//! Reports rendered as text or as a single JSON object with sorted keys.

use serde::Serialize;
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "kummerlab/1";

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub pass: bool,
    pub result: Value,
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str, pass: bool, result: Value, lines: Vec<String>) -> Self {
        Report { command: command.to_string(), pass, result, lines }
    }

    pub fn to_json(&self) -> String {
        let v = json!({
            "schema": SCHEMA,
            "command": self.command,
            "pass": self.pass,
            "result": self.result,
        });
        debug_assert!(!has_float(&v));
        v.to_string()
    }

    pub fn to_text(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s.push_str(if self.pass { "PASS\n" } else { "FAIL\n" });
        s
    }
}

/// Any serializable value as a JSON tree; maps come out key-sorted.
pub fn value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

pub fn object(entries: Vec<(&str, Value)>) -> Value {
    Value::Object(entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}

pub fn has_float(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_f64(),
        Value::Array(a) => a.iter().any(has_float),
        Value::Object(o) => o.values().any(has_float),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_is_sorted_and_versioned() {
        let r = Report::new("x", true, object(vec![("zeta", json!(1)), ("alpha", json!("2"))]), vec![]);
        assert_eq!(
            r.to_json(),
            r#"{"command":"x","pass":true,"result":{"alpha":"2","zeta":1},"schema":"kummerlab/1"}"#
        );
        assert!(has_float(&json!({"a": [1, 2.5]})));
        assert!(!has_float(&json!({"a": [1, -2]})));
    }
}
