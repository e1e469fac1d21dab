//! JSON encodings: −∞ → `null`, +∞ → `"inf"`, finite values as numbers.

use serde::Serializer;
use serde_json::{json, Value};

use crate::tropical::{Trop, TropicalMatrix, TropicalVector};

pub fn trop_to_json(t: Trop) -> Value {
    value_to_json(t.0)
}

pub fn value_to_json(v: f64) -> Value {
    if v == f64::NEG_INFINITY {
        Value::Null
    } else if v == f64::INFINITY {
        Value::String("inf".into())
    } else {
        json!(v)
    }
}

/// Inverse of [`value_to_json`].
pub fn json_to_value(v: &Value) -> Option<f64> {
    match v {
        Value::Null => Some(f64::NEG_INFINITY),
        Value::String(s) if s == "inf" => Some(f64::INFINITY),
        Value::String(s) if s == "-inf" => Some(f64::NEG_INFINITY),
        Value::Number(n) => n.as_f64(),
        _ => None,
    }
}

pub fn serialize_trop<S: Serializer>(t: &Trop, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_some(&trop_to_json(*t))
}

pub fn vector_to_json(v: &TropicalVector) -> Value {
    Value::Array(v.iter().map(trop_to_json).collect())
}

/// Vector as a `label → value` object.
pub fn labelled_vector(labels: &[String], v: &TropicalVector) -> Value {
    let map: serde_json::Map<String, Value> =
        labels.iter().cloned().zip(v.iter().map(trop_to_json)).collect();
    Value::Object(map)
}

/// Dense rows in label order.
pub fn matrix_to_json(m: &TropicalMatrix) -> Value {
    Value::Array(
        m.to_dense()
            .into_iter()
            .map(|row| Value::Array(row.into_iter().map(value_to_json).collect()))
            .collect(),
    )
}
