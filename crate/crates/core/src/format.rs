//! The measure file: a JSON document with `kind`, `n`, and either orbit `weights` or `atoms`.
//!
//! ```json
//! {
//!   "kind": "orbit",
//!   "n": 6,
//!   "weights": {
//!     "0": "1/12",
//!     "3": "5/6",
//!     "6": "1/12"
//!   }
//! }
//! ```
//!
//! Keys are written in canonical order (orbit index ascending, atom strings lexicographic), zero
//! masses are omitted, and rationals are in lowest terms, so serialization is byte-stable.

use num_traits::{Signed, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::measure::{AtomicMeasure, Measure, OrbitMeasure};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::sign::SignVector;

pub fn measure_to_json(m: &Measure) -> Value {
    let mut doc = Map::new();
    match m {
        Measure::Orbit(o) => {
            doc.insert("kind".into(), "orbit".into());
            doc.insert("n".into(), o.n().into());
            let mut weights = Map::new();
            for w in o.support() {
                weights.insert(w.to_string(), format_rational(o.weight(w)).into());
            }
            doc.insert("weights".into(), Value::Object(weights));
        }
        Measure::Atomic(a) => {
            doc.insert("kind".into(), "atomic".into());
            doc.insert("n".into(), a.n().into());
            let mut atoms: Vec<(String, String)> =
                a.atoms().iter().map(|(v, q)| (v.to_string(), format_rational(q))).collect();
            atoms.sort();
            let atoms: Map<String, Value> = atoms.into_iter().map(|(k, v)| (k, Value::String(v))).collect();
            doc.insert("atoms".into(), Value::Object(atoms));
        }
    }
    Value::Object(doc)
}

/// Canonical text of the measure file, newline-terminated.
pub fn write_measure(m: &Measure) -> String {
    let mut s = serde_json::to_string_pretty(&measure_to_json(m)).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn read_measure(text: &str) -> Result<Measure> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    measure_from_json(&doc)
}

pub fn measure_from_json(doc: &Value) -> Result<Measure> {
    let obj = doc.as_object().ok_or_else(|| Error::Parse("measure document must be a JSON object".into()))?;
    let kind =
        obj.get("kind").and_then(Value::as_str).ok_or_else(|| Error::Parse("missing string field \"kind\"".into()))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Parse("field \"n\" must be a positive integer".into()))? as usize;
    match kind {
        "orbit" => {
            let weights = field_map(obj, "weights")?;
            let mut entries = Vec::with_capacity(weights.len());
            for (key, val) in weights {
                let w: usize = key
                    .parse()
                    .ok()
                    .filter(|w: &usize| w.to_string() == *key)
                    .ok_or_else(|| Error::Parse(format!("orbit key {key:?} is not a canonical index")))?;
                if w > n {
                    return Err(Error::Parse(format!("orbit index {w} exceeds n = {n}")));
                }
                entries.push((w, mass(val, key)?));
            }
            Ok(Measure::Orbit(OrbitMeasure::from_sparse(n, entries)?))
        }
        "atomic" => {
            let atoms = field_map(obj, "atoms")?;
            let mut entries = Vec::with_capacity(atoms.len());
            for (key, val) in atoms {
                let v: SignVector = key.parse()?;
                if v.n() != n {
                    return Err(Error::Parse(format!("atom {key:?} does not have length {n}")));
                }
                entries.push((v, mass(val, key)?));
            }
            Ok(Measure::Atomic(AtomicMeasure::new(n, entries)?))
        }
        other => Err(Error::Parse(format!("unknown measure kind {other:?}"))),
    }
}

fn field_map<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a Map<String, Value>> {
    obj.get(name).and_then(Value::as_object).ok_or_else(|| Error::Parse(format!("missing object field {name:?}")))
}

fn mass(val: &Value, key: &str) -> Result<Rational> {
    let s = val.as_str().ok_or_else(|| Error::Parse(format!("mass for {key:?} must be a string")))?;
    let q = parse_rational(s)?;
    if q.is_negative() || q.is_zero() {
        return Err(Error::Parse(format!("mass for {key:?} must be positive, got {s}")));
    }
    Ok(q)
}
