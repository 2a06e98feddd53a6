//! Serialization helpers: JSON documents, CSV, and plain text.
//!
//! Integers that do not fit in 53 bits are written as strings, floats with
//! 17 significant digits, and every JSON document carries a `schema` tag.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::Result;

pub const EXACT_INT_LIMIT: i128 = 1 << 53;

/// Serde adapter for `i128`: a JSON number when it fits 53 bits, else a string.
pub mod int_str {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &i128, s: S) -> Result<S::Ok, S::Error> {
        if x.abs() < super::EXACT_INT_LIMIT {
            s.serialize_i64(*x as i64)
        } else {
            s.serialize_str(&x.to_string())
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<i128, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match &v {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(i128::from)
                .ok_or_else(|| D::Error::custom(format!("not an integer: {n}"))),
            serde_json::Value::String(s) => s.parse().map_err(D::Error::custom),
            other => Err(D::Error::custom(format!("not an integer: {other}"))),
        }
    }
}

/// Same as [`int_str`] for `u128`.
pub mod uint_str {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &u128, s: S) -> Result<S::Ok, S::Error> {
        if *x < super::EXACT_INT_LIMIT as u128 {
            s.serialize_u64(*x as u64)
        } else {
            s.serialize_str(&x.to_string())
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u128, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match &v {
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(u128::from)
                .ok_or_else(|| D::Error::custom(format!("not an integer: {n}"))),
            serde_json::Value::String(s) => s.parse().map_err(D::Error::custom),
            other => Err(D::Error::custom(format!("not an integer: {other}"))),
        }
    }
}

/// Serde adapter for `i64` values that may exceed 53 bits.
pub mod i64_str {
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &i64, s: S) -> Result<S::Ok, S::Error> {
        super::int_str::serialize(&(*x as i128), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<i64, D::Error> {
        use serde::de::Error;
        let v = super::int_str::deserialize(d)?;
        i64::try_from(v).map_err(D::Error::custom)
    }
}

/// `i64` vectors with the 53-bit rule applied per entry.
pub mod vec_i64_str {
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &[i64], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<serde_json::Value> = x
            .iter()
            .map(|&n| {
                if (n as i128).abs() < super::EXACT_INT_LIMIT {
                    serde_json::Value::from(n)
                } else {
                    serde_json::Value::from(n.to_string())
                }
            })
            .collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<i64>, D::Error> {
        let v: Vec<serde_json::Value> = Vec::deserialize(d)?;
        v.into_iter()
            .map(|x| match x {
                serde_json::Value::Number(n) => n.as_i64().ok_or_else(|| D::Error::custom("not an i64")),
                serde_json::Value::String(s) => s.parse().map_err(D::Error::custom),
                other => Err(D::Error::custom(format!("not an integer: {other}"))),
            })
            .collect()
    }
}

/// Formats a float with 17 significant digits, enough to round-trip.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

/// Wraps a payload as `{"schema": ..., "kind": ..., ...payload}`.
pub fn document<T: Serialize>(schema: &str, kind: &str, payload: &T) -> Result<Value> {
    let body = serde_json::to_value(payload)?;
    let mut m = Map::new();
    m.insert("schema".into(), Value::from(schema));
    m.insert("kind".into(), Value::from(kind));
    match body {
        Value::Object(o) => {
            for (k, v) in o {
                m.insert(k, v);
            }
        }
        other => {
            m.insert("data".into(), other);
        }
    }
    Ok(Value::Object(m))
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap_or_default();
    s.push('\n');
    s
}

/// Removes timing fields (`elapsed_ms`, `wall_ms`, ...) for byte comparisons.
pub fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(o) => {
            o.retain(|k, _| !is_timing_key(k));
            for x in o.values_mut() {
                strip_timing(x);
            }
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

pub fn is_timing_key(k: &str) -> bool {
    k == "timing" || k.ends_with("_ms") || k == "elapsed" || k == "wall_time"
}

/// Writes a header and rows as CSV, quoting only where needed.
pub fn csv<S: AsRef<str>>(header: &[&str], rows: &[Vec<S>]) -> String {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    // writing into a Vec cannot fail
    w.write_record(header).expect("in-memory csv");
    for r in rows {
        w.write_record(r.iter().map(|x| x.as_ref())).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 input")
}

/// Parses output of [`csv`] back into rows (header included).
pub fn parse_csv(s: &str) -> Result<Vec<Vec<String>>> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(s.as_bytes())
        .records()
        .map(|r| r.map(|r| r.iter().map(str::to_string).collect()).map_err(|e| crate::error::Error::Parse(e.to_string())))
        .collect()
}
