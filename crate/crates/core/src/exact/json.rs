//! Canonical JSON encoding of exact values.
//!
//! * rationals: `"p/q"` with `q > 0` in lowest terms
//! * Gaussian rationals: `{"re": "p/q", "im": "r/s"}`
//! * matrices: row-major nested arrays
//! * polynomials: `[{"exps": {"v1": 2, ...}, "coeff": {...}}, ...]` in ascending graded-lex order

use serde_json::{json, Map, Value};

use super::gaussian::{parse_rational, rational_to_string, GaussianRational};
use super::matrix::{Matrix, Scalar};
use super::poly::{Monomial, MultiPoly, Var};
use crate::error::{Error, Result};

pub trait ToJson {
    fn to_json(&self) -> Value;
}

impl ToJson for GaussianRational {
    fn to_json(&self) -> Value {
        json!({ "re": rational_to_string(&self.re), "im": rational_to_string(&self.im) })
    }
}

impl ToJson for MultiPoly {
    fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .map(|(m, c)| {
                    let exps: Map<String, Value> = m
                        .pairs()
                        .iter()
                        .map(|&(v, e)| (v.name(), json!(e)))
                        .collect();
                    json!({ "exps": exps, "coeff": c.to_json() })
                })
                .collect(),
        )
    }
}

impl<T: Scalar + ToJson> ToJson for Matrix<T> {
    fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows())
                .map(|i| Value::Array(self.row(i).iter().map(ToJson::to_json).collect()))
                .collect(),
        )
    }
}

impl<T: ToJson> ToJson for [T] {
    fn to_json(&self) -> Value {
        Value::Array(self.iter().map(ToJson::to_json).collect())
    }
}

impl<T: ToJson> ToJson for Vec<T> {
    fn to_json(&self) -> Value {
        self.as_slice().to_json()
    }
}

fn str_field<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    v.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse(format!("missing string field `{key}`")))
}

pub fn gaussian_from_json(v: &Value) -> Result<GaussianRational> {
    Ok(GaussianRational::new(
        parse_rational(str_field(v, "re")?)?,
        parse_rational(str_field(v, "im")?)?,
    ))
}

pub fn poly_from_json(v: &Value) -> Result<MultiPoly> {
    let terms = v
        .as_array()
        .ok_or_else(|| Error::Parse("polynomial must be an array".into()))?;
    let mut out = MultiPoly::zero();
    for t in terms {
        let exps = t
            .get("exps")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("term without `exps` object".into()))?;
        let mut pairs = Vec::new();
        for (name, e) in exps {
            let e = e
                .as_u64()
                .ok_or_else(|| Error::Parse(format!("bad exponent for {name}")))?;
            pairs.push((Var::parse(name)?, e as u32));
        }
        let coeff = gaussian_from_json(
            t.get("coeff")
                .ok_or_else(|| Error::Parse("term without coeff".into()))?,
        )?;
        out.add_term(Monomial::from_pairs(pairs), &coeff);
    }
    Ok(out)
}

pub fn matrix_from_json<T: Scalar>(
    v: &Value,
    entry: impl Fn(&Value) -> Result<T>,
) -> Result<Matrix<T>> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
    let parsed = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                .iter()
                .map(&entry)
                .collect::<Result<Vec<T>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(parsed)
}
