//! Reading period matrices from JSON.
//!
//! `{"g": 2, "re": [[...]], "im": [[...]]}` with numeric entries gives a
//! floating-point matrix. If any entry is a string the whole matrix is read
//! exactly: strings are parsed as `p` or `p/q` and integer numbers are
//! accepted as they are.

use std::path::Path;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::period::{validate_period_matrix, PeriodMatrix, RawPeriodMatrix};
use crate::rational::RationalPeriodMatrix;

#[derive(Debug, Clone, PartialEq)]
pub enum PeriodInput {
    Float(PeriodMatrix),
    Exact(RationalPeriodMatrix),
}

impl PeriodInput {
    pub fn genus(&self) -> usize {
        match self {
            Self::Float(t) => t.genus(),
            Self::Exact(t) => t.genus(),
        }
    }

    /// The floating-point matrix, rounding exact entries.
    pub fn to_float(&self) -> Result<PeriodMatrix> {
        match self {
            Self::Float(t) => Ok(t.clone()),
            Self::Exact(t) => t.to_float(),
        }
    }
}

pub fn parse_period_json(text: &str) -> Result<PeriodInput> {
    let value: Value = serde_json::from_str(text)?;
    let has_string = ["re", "im"].iter().any(|k| {
        value
            .get(k)
            .and_then(Value::as_array)
            .is_some_and(|rows| rows.iter().filter_map(Value::as_array).flatten().any(Value::is_string))
    });
    if !has_string {
        let raw: RawPeriodMatrix = serde_json::from_value(value)?;
        return validate_period_matrix(&raw).map(PeriodInput::Float);
    }
    let g = value
        .get("g")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing or invalid `g`".into()))? as usize;
    let re = exact_rows(&value, "re")?;
    let im = exact_rows(&value, "im")?;
    if re.len() != g {
        return Err(Error::BadDimension(format!("`g` is {g} but `re` has {} rows", re.len())));
    }
    RationalPeriodMatrix::parse(&re, &im).map(PeriodInput::Exact)
}

fn exact_rows(value: &Value, key: &str) -> Result<Vec<Vec<String>>> {
    let rows = value
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse(format!("missing array `{key}`")))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Parse(format!("`{key}` must be an array of rows")))?
                .iter()
                .map(|v| match v {
                    Value::String(s) => Ok(s.clone()),
                    Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
                    other => Err(Error::Parse(format!(
                        "exact input needs integers or \"p/q\" strings, got {other}"
                    ))),
                })
                .collect()
        })
        .collect()
}

pub fn read_period_file(path: &Path) -> Result<PeriodInput> {
    parse_period_json(&std::fs::read_to_string(path)?)
}
