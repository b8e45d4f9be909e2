//! JSON file formats.
//!
//! Function files look like
//! `{"k": 2, "box": {"mode": "cube", "T": 8}, "values": [{"n": [2, 2], "v": "-1/1"}]}`.
//! Rationals are always written as `"p/q"`; `"p"` is accepted on input.
//! Omitted indices are zero.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::function::{ArithFunction, Scalar};
use crate::index::{IndexBox, MultiIndex};
use crate::ufd::encoding::TruncatedSeries;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct BoxSpec {
    mode: String,
    #[serde(rename = "T")]
    t: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Entry {
    n: Vec<u64>,
    v: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionFile {
    k: usize,
    #[serde(rename = "box")]
    domain: BoxSpec,
    values: Vec<Entry>,
}

pub fn format_rational(q: &Scalar) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(text: &str) -> Result<Scalar> {
    let bad = || Error::Format(format!("bad rational `{text}`"));
    let int = |s: &str| s.trim().parse::<BigInt>().map_err(|_| bad());
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (int(p)?, int(q)?),
        None => (int(text)?, BigInt::from(1)),
    };
    if q.is_zero() {
        return Err(Error::Format(format!("zero denominator in `{text}`")));
    }
    Ok(Scalar::new(p, q))
}

fn box_spec(domain: &IndexBox) -> Result<BoxSpec> {
    match (domain.cube_limit(), domain.product_limit()) {
        (Some(t), None) => Ok(BoxSpec { mode: "cube".into(), t }),
        (None, Some(t)) => Ok(BoxSpec { mode: "product".into(), t }),
        _ => Err(Error::Format(format!("box {domain} has no file representation"))),
    }
}

pub fn function_to_json(f: &ArithFunction) -> Result<String> {
    let file = FunctionFile {
        k: f.arity(),
        domain: box_spec(f.domain())?,
        values: f.support().map(|(n, v)| Entry { n: n.entries().to_vec(), v: format_rational(v) }).collect(),
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

pub fn function_from_json(text: &str) -> Result<ArithFunction> {
    let file: FunctionFile = serde_json::from_str(text)?;
    let domain = match file.domain.mode.as_str() {
        "cube" => IndexBox::cube(file.k, file.domain.t)?,
        "product" => IndexBox::product(file.k, file.domain.t)?,
        other => return Err(Error::Format(format!("unknown box mode `{other}`"))),
    };
    let mut entries = Vec::with_capacity(file.values.len());
    for e in file.values {
        if e.n.len() != file.k {
            return Err(Error::ArityMismatch { left: file.k, right: e.n.len() });
        }
        entries.push((MultiIndex::new(e.n)?, parse_rational(&e.v)?));
    }
    ArithFunction::from_entries(domain, entries)
}

pub fn read_function(path: &Path) -> Result<ArithFunction> {
    function_from_json(&fs::read_to_string(path)?)
}

pub fn write_function(path: &Path, f: &ArithFunction) -> Result<()> {
    fs::write(path, function_to_json(f)? + "\n")?;
    Ok(())
}

#[derive(Serialize)]
struct Monomial {
    exp: Vec<(u64, u32)>,
    coef: String,
}

#[derive(Serialize)]
struct SeriesFile {
    monomials: Vec<Monomial>,
}

/// `{"monomials": [{"exp": [[slot, power], ...], "coef": "p/q"}]}`.
pub fn series_to_json(series: &TruncatedSeries) -> Result<String> {
    let monomials = series
        .monomials()
        .map(|(e, c)| Monomial { exp: e.entries().collect(), coef: format_rational(c) })
        .collect();
    Ok(serde_json::to_string_pretty(&SeriesFile { monomials })?)
}

/// Evaluation report written by the `eval` command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub s: Vec<[f64; 2]>,
    #[serde(rename = "T")]
    pub t: u64,
    pub value: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tail_radius: Option<f64>,
    pub region_checks: BTreeMap<String, bool>,
}
