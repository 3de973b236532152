//! JSON documents for tensors, decompositions and rank reports.
//!
//! Exact scalars are strings such as `"1/2"` or `"1/3-2 i"`. Exact values
//! outside `Q(i)` use `{"zeta": N, "coeffs": [..]}`, the coefficients of
//! `Σ c_j ζ_N^j`. Floats are `[re, im]` pairs and GF(2) values are `0`/`1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cyclotomic::{fmt_rational, Cyclotomic};
use crate::error::{Error, Result};
use crate::rank_relations::RankReport;
use crate::scalar::{Mode, Scalar};
use crate::tensor::{HankelTensor, VandermondeDecomposition, VandermondeTerm};

pub fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Exact(c) => match c.as_gauss() {
            Some(_) => Value::String(c.to_string()),
            None => json!({
                "zeta": c.order(),
                "coeffs": c.coeffs().iter().map(fmt_rational).collect::<Vec<_>>(),
            }),
        },
        Scalar::Float(z) => json!([z.re, z.im]),
        Scalar::Gf2(b) => json!(u8::from(*b)),
    }
}

fn parse_rational(text: &str, at: &str) -> Result<BigRational> {
    match Scalar::parse_exact(text).map_err(|e| Error::Parse(format!("{at}: {e}")))? {
        Scalar::Exact(c) => c
            .rational_part()
            .ok_or_else(|| Error::Parse(format!("{at}: expected a rational, got '{text}'"))),
        _ => unreachable!("parse_exact yields exact scalars"),
    }
}

/// Decode a scalar in the given mode. `at` names the location for error messages.
pub fn scalar_from_json(v: &Value, mode: Mode, at: &str) -> Result<Scalar> {
    let bad = |what: &str| Error::Parse(format!("{at}: expected {what}, found {v}"));
    match mode {
        Mode::Exact => match v {
            Value::String(s) => Scalar::parse_exact(s).map_err(|e| Error::Parse(format!("{at}: {e}"))),
            Value::Number(n) if n.is_i64() => Ok(Scalar::from_i64(Mode::Exact, n.as_i64().expect("checked"))),
            Value::Object(o) => {
                let order = o
                    .get("zeta")
                    .and_then(Value::as_u64)
                    .filter(|&k| (1..=u64::from(u32::MAX)).contains(&k))
                    .ok_or_else(|| bad("a positive integer \"zeta\" field"))?;
                let coeffs = o
                    .get("coeffs")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("a \"coeffs\" array"))?
                    .iter()
                    .map(|c| match c {
                        Value::String(s) => parse_rational(s, at),
                        Value::Number(n) if n.is_i64() => {
                            Ok(BigRational::from_integer(BigInt::from(n.as_i64().expect("checked"))))
                        }
                        _ => Err(bad("rational coefficients")),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Scalar::Exact(Cyclotomic::from_power_coeffs(order as u32, coeffs)))
            }
            _ => Err(bad("an exact scalar string")),
        },
        Mode::Float => match v {
            Value::Array(a) if a.len() == 2 => {
                let re = a[0].as_f64().ok_or_else(|| bad("[re, im] numbers"))?;
                let im = a[1].as_f64().ok_or_else(|| bad("[re, im] numbers"))?;
                Ok(Scalar::float(re, im))
            }
            Value::Number(n) => Ok(Scalar::float(n.as_f64().ok_or_else(|| bad("a number"))?, 0.0)),
            _ => Err(bad("a [re, im] pair")),
        },
        Mode::Gf2 => match v.as_u64() {
            Some(b @ (0 | 1)) => Ok(Scalar::Gf2(b == 1)),
            _ => Err(bad("0 or 1")),
        },
    }
}

fn from_str<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        Error::Parse(format!("line {}, column {}: {}", e.line(), e.column(), strip_position(&e.to_string())))
    })
}

fn strip_position(msg: &str) -> &str {
    msg.rfind(" at line ").map_or(msg, |k| &msg[..k])
}

fn to_string<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

#[derive(Serialize, Deserialize)]
struct TensorDoc {
    n: usize,
    m: usize,
    mode: Mode,
    h: Vec<Value>,
}

pub fn tensor_to_json(t: &HankelTensor) -> String {
    to_string(&TensorDoc {
        n: t.n(),
        m: t.m(),
        mode: t.mode(),
        h: t.h().iter().map(scalar_to_json).collect(),
    })
}

pub fn tensor_from_json(text: &str) -> Result<HankelTensor> {
    let doc: TensorDoc = from_str(text)?;
    let h = doc
        .h
        .iter()
        .enumerate()
        .map(|(k, v)| scalar_from_json(v, doc.mode, &format!("h[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    HankelTensor::with_mode(doc.n, doc.m, doc.mode, h)
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    lambda: Value,
    a: Value,
    b: Value,
}

#[derive(Serialize, Deserialize)]
struct DecompositionDoc {
    n: usize,
    m: usize,
    mode: Mode,
    unique: bool,
    #[serde(default)]
    claimed_rank: Option<usize>,
    terms: Vec<TermDoc>,
}

pub fn decomposition_to_json(d: &VandermondeDecomposition) -> String {
    to_string(&DecompositionDoc {
        n: d.n,
        m: d.m,
        mode: d.mode,
        unique: d.unique,
        claimed_rank: Some(d.claimed_rank),
        terms: d
            .terms
            .iter()
            .map(|t| TermDoc {
                lambda: scalar_to_json(&t.lambda),
                a: scalar_to_json(&t.a),
                b: scalar_to_json(&t.b),
            })
            .collect(),
    })
}

pub fn decomposition_from_json(text: &str) -> Result<VandermondeDecomposition> {
    let doc: DecompositionDoc = from_str(text)?;
    let terms = doc
        .terms
        .iter()
        .enumerate()
        .map(|(k, t)| {
            Ok(VandermondeTerm {
                lambda: scalar_from_json(&t.lambda, doc.mode, &format!("terms[{k}].lambda"))?,
                a: scalar_from_json(&t.a, doc.mode, &format!("terms[{k}].a"))?,
                b: scalar_from_json(&t.b, doc.mode, &format!("terms[{k}].b"))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VandermondeDecomposition {
        n: doc.n,
        m: doc.m,
        mode: doc.mode,
        claimed_rank: doc.claimed_rank.unwrap_or(terms.len()),
        unique: doc.unique,
        terms,
    })
}

/// The report with an extra `certificate_text` list of readable lines.
pub fn report_to_json(r: &RankReport) -> String {
    let mut v = serde_json::to_value(r).expect("report serializes");
    v["certificate_text"] = Value::from(r.certificates.iter().map(ToString::to_string).collect::<Vec<_>>());
    to_string(&v)
}

pub fn report_from_json(text: &str) -> Result<RankReport> {
    from_str(text)
}
