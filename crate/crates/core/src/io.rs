//! JSON layout of coefficient tuples: keys `a0`..`f0`, values as integers,
//! decimal strings or `"p/q"`. Missing keys are zero.

use serde_json::{Map, Value};

use crate::darboux::{DarbouxCoefficients, KEYS};
use crate::scalar::{parse_rational, Rational, Scalar};
use crate::Error;

/// Key written by the generators and ignored on input.
pub const PROVENANCE_KEY: &str = "provenance";

pub fn parse_value(v: &Value) -> Result<Rational, Error> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(Error::Parse(format!("expected a number or string, got {other}"))),
    }
}

pub fn coefficients_from_json(v: &Value) -> Result<DarbouxCoefficients<Rational>, Error> {
    let obj = v.as_object().ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
    let mut vals: [Rational; 14] = std::array::from_fn(|_| Rational::from_i64(0));
    for (key, val) in obj {
        if key == PROVENANCE_KEY {
            continue;
        }
        let i = KEYS.iter().position(|k| k == key).ok_or_else(|| Error::Parse(format!("unknown key {key:?}")))?;
        vals[i] = parse_value(val).map_err(|e| Error::Parse(format!("{key}: {e}")))?;
    }
    Ok(DarbouxCoefficients::from_array(vals))
}

pub fn coefficients_from_str(s: &str) -> Result<DarbouxCoefficients<Rational>, Error> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    coefficients_from_json(&v)
}

/// Reads one record given as `(key, value)` strings, e.g. a CSV row.
pub fn coefficients_from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<DarbouxCoefficients<Rational>, Error> {
    let mut obj = Map::new();
    for (k, v) in pairs {
        let v = v.trim();
        if !v.is_empty() {
            obj.insert(k.trim().to_string(), Value::String(v.to_string()));
        }
    }
    coefficients_from_json(&Value::Object(obj))
}

pub fn coefficients_to_json<T: Scalar>(c: &DarbouxCoefficients<T>) -> Value {
    let mut obj = Map::new();
    for (k, v) in KEYS.iter().zip(c.to_array()) {
        obj.insert(k.to_string(), v.to_json());
    }
    Value::Object(obj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::k;

    #[test]
    fn reads_mixed_values() {
        let c = coefficients_from_str(r#"{"a0":1,"c1":"-10","c2":"-20/2","c3":6.0,"f0":"9"}"#).unwrap();
        assert_eq!(c.a0, k::<Rational>(1));
        assert_eq!(c.c, [k(-10), k(-10), k(6)]);
        assert_eq!(c.f0, k::<Rational>(9));
        assert_eq!(c.e, [k(0), k(0), k(0)]);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(coefficients_from_str(r#"{"g0":1}"#).is_err());
        assert!(coefficients_from_str(r#"{"a0":"x"}"#).is_err());
        assert!(coefficients_from_str(r#"{"a0":true}"#).is_err());
        assert!(coefficients_from_str("[1,2]").is_err());
        assert!(coefficients_from_str(r#"{"a0":1,"provenance":{"rng_seed":1}}"#).is_ok());
    }

    #[test]
    fn json_roundtrip() {
        let c = coefficients_from_str(r#"{"a0":"1/3","d2":"-7/5","e3":4}"#).unwrap();
        let back = coefficients_from_json(&coefficients_to_json(&c)).unwrap();
        assert_eq!(back, c);
    }
}
