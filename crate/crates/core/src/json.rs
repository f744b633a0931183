//! Small helpers shared by the JSON schemas.

use num_bigint::BigInt;
use serde_json::Value;

use crate::arith::parse_bigint;
use crate::error::{Error, Result};

/// Integers may be given as JSON numbers or decimal strings.
pub fn bigint_from_value(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => parse_bigint(s),
        Value::Number(n) => parse_bigint(&n.to_string()),
        other => Err(Error::Parse(format!("expected an integer, got {other}"))),
    }
}

pub fn parse_json(src: &str) -> Result<Value> {
    serde_json::from_str(src).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}
