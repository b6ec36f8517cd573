//! JSON and CSV formats for grids, weights, samples, spectra and count sweeps.

use std::collections::HashMap;
use std::io::{Read, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grids::{GridPoint, GridWeight};
use crate::rootdata::{AlgebraType, SignHom};
use crate::transforms::{RationalPoint, SampleTable, Spectrum, TransformPlan};

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointRecord {
    pub kac: Vec<i64>,
    pub q: Vec<i64>,
    pub eps: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridFile {
    pub algebra: AlgebraType,
    #[serde(rename = "M")]
    pub level: i64,
    pub sigma: SignHom,
    #[serde(default, skip_serializing_if = "is_false")]
    pub relaxed: bool,
    pub points: Vec<PointRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightRecord {
    pub kac: Vec<i64>,
    pub h: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightFile {
    pub algebra: AlgebraType,
    #[serde(rename = "M")]
    pub level: i64,
    pub sigma: SignHom,
    #[serde(default, skip_serializing_if = "is_false")]
    pub relaxed: bool,
    pub weights: Vec<WeightRecord>,
}

/// A complex number as `{"re": .., "im": ..}` or a bare real number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Complex { re: f64, im: f64 },
    Real(f64),
}

impl Value {
    pub fn complex(self) -> Complex64 {
        match self {
            Value::Complex { re, im } => Complex64::new(re, im),
            Value::Real(x) => Complex64::new(x, 0.0),
        }
    }

    pub fn real(self) -> Result<f64> {
        match self {
            Value::Real(x) => Ok(x),
            Value::Complex { re, im } if im == 0.0 => Ok(re),
            Value::Complex { .. } => Err(Error::Parse("Hartley input must be real".into())),
        }
    }
}

impl From<Complex64> for Value {
    fn from(z: Complex64) -> Self {
        Value::Complex { re: z.re, im: z.im }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Real(x)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub kac: Vec<i64>,
    #[serde(default)]
    pub q: Vec<i64>,
    #[serde(default)]
    pub eps: u128,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleFile {
    pub algebra: AlgebraType,
    #[serde(rename = "M")]
    pub level: i64,
    pub sigma: SignHom,
    #[serde(default, skip_serializing_if = "is_false")]
    pub relaxed: bool,
    pub samples: Vec<SampleRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRecord {
    pub kac: Vec<i64>,
    pub h: u128,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumFile {
    pub algebra: AlgebraType,
    #[serde(rename = "M")]
    pub level: i64,
    pub sigma: SignHom,
    /// `"fourier"` or `"hartley"`.
    pub transform: String,
    #[serde(default, skip_serializing_if = "is_false")]
    pub relaxed: bool,
    /// Largest relative reconstruction error on the grid, when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roundtrip_error: Option<f64>,
    pub coefficients: Vec<CoefficientRecord>,
}

pub fn grid_file(algebra: AlgebraType, sigma: SignHom, level: i64, relaxed: bool, points: &[GridPoint]) -> GridFile {
    GridFile {
        algebra,
        level,
        sigma,
        relaxed,
        points: points
            .iter()
            .map(|p| PointRecord { kac: p.kac.coords.clone(), q: p.q.clone(), eps: p.eps })
            .collect(),
    }
}

pub fn weight_file(algebra: AlgebraType, sigma: SignHom, level: i64, relaxed: bool, weights: &[GridWeight]) -> WeightFile {
    WeightFile {
        algebra,
        level,
        sigma,
        relaxed,
        weights: weights.iter().map(|w| WeightRecord { kac: w.kac.coords.clone(), h: w.h }).collect(),
    }
}

pub fn sample_file<V: Copy + Into<Value>>(plan: &TransformPlan, relaxed: bool, table: &SampleTable<V>) -> SampleFile {
    SampleFile {
        algebra: plan.data.kind,
        level: plan.level,
        sigma: plan.sigma,
        relaxed,
        samples: table
            .points
            .iter()
            .zip(&table.values)
            .map(|(p, v)| SampleRecord {
                kac: p.kac.coords.clone(),
                q: p.q.clone(),
                eps: p.eps,
                value: (*v).into(),
            })
            .collect(),
    }
}

pub fn spectrum_file<V: Copy + Into<Value>>(
    plan: &TransformPlan,
    relaxed: bool,
    transform: &str,
    spectrum: &Spectrum<V>,
) -> SpectrumFile {
    SpectrumFile {
        algebra: plan.data.kind,
        level: plan.level,
        sigma: plan.sigma,
        transform: transform.to_string(),
        relaxed,
        roundtrip_error: None,
        coefficients: spectrum
            .weights
            .iter()
            .zip(&spectrum.coeffs)
            .map(|(w, c)| CoefficientRecord { kac: w.kac.coords.clone(), h: w.h, value: (*c).into() })
            .collect(),
    }
}

/// Matches sample records to the plan's grid by Kac vector; every grid point must
/// appear exactly once.
pub fn align_samples(plan: &TransformPlan, records: &[(Vec<i64>, Value)]) -> Result<SampleTable<Value>> {
    let mut by_kac: HashMap<&[i64], Value> = HashMap::new();
    for (k, v) in records {
        if by_kac.insert(k.as_slice(), *v).is_some() {
            return Err(Error::GridMismatch(format!("point {k:?} appears twice")));
        }
    }
    if records.len() != plan.points.len() {
        return Err(Error::GridMismatch(format!(
            "expected {} samples, got {}",
            plan.points.len(),
            records.len()
        )));
    }
    let values = plan
        .points
        .iter()
        .map(|p| {
            by_kac
                .get(p.kac.coords.as_slice())
                .copied()
                .ok_or_else(|| Error::GridMismatch(format!("missing sample at {:?}", p.kac.coords)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SampleTable { points: plan.points.clone(), values })
}

fn join(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn split(s: &str) -> Result<Vec<i64>> {
    s.split_whitespace()
        .map(|t| t.parse::<i64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
        .collect()
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

/// Writes `kac,q,eps,re,im` rows; integer vectors are space separated.
pub fn write_samples_csv<W: Write>(out: W, table: &SampleTable<Complex64>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["kac", "q", "eps", "re", "im"]).map_err(csv_err)?;
    for (p, v) in table.points.iter().zip(&table.values) {
        w.write_record([join(&p.kac.coords), join(&p.q), p.eps.to_string(), v.re.to_string(), v.im.to_string()])
            .map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))
}

/// Reads sample rows with a `kac` column and either `re`/`im` or `value` columns.
pub fn read_samples_csv<R: Read>(input: R) -> Result<Vec<(Vec<i64>, Value)>> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers().map_err(csv_err)?.clone();
    let col = |name: &str| headers.iter().position(|h| h.trim() == name);
    let kac = col("kac").ok_or_else(|| Error::Parse("missing kac column".into()))?;
    let (re, im, val) = (col("re"), col("im"), col("value"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|e| Error::Parse(format!("{s:?}: {e}")));
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_err)?;
        let k = split(&rec[kac])?;
        let v = match (re, im, val) {
            (Some(a), Some(b), _) => Value::Complex { re: num(&rec[a])?, im: num(&rec[b])? },
            (Some(a), None, _) => Value::Real(num(&rec[a])?),
            (_, _, Some(c)) => Value::Real(num(&rec[c])?),
            _ => return Err(Error::Parse("missing value columns".into())),
        };
        out.push((k, v));
    }
    Ok(out)
}

/// Reads evaluation points from `denom,q` rows.
pub fn read_points_csv<R: Read>(input: R, rank: usize) -> Result<Vec<RationalPoint>> {
    let mut r = csv::Reader::from_reader(input);
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_err)?;
        if rec.len() < 2 {
            return Err(Error::Parse("expected denom,q".into()));
        }
        let denom: i64 = rec[0].trim().parse().map_err(|e| Error::Parse(format!("denominator: {e}")))?;
        let q = split(&rec[1])?;
        if denom <= 0 || q.len() != rank {
            return Err(Error::Parse(format!("bad evaluation point {:?}", rec)));
        }
        out.push(RationalPoint::new(q, denom));
    }
    Ok(out)
}

/// Writes `denom,q,re,im` rows.
pub fn write_evaluations_csv<W: Write>(out: W, pts: &[RationalPoint], vals: &[Value]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["denom", "q", "re", "im"]).map_err(csv_err)?;
    for (p, v) in pts.iter().zip(vals) {
        let z = v.complex();
        w.write_record([p.denom.to_string(), join(&p.q), z.re.to_string(), z.im.to_string()])
            .map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))
}

/// Pretty-printed JSON followed by a newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable");
    s.push('\n');
    s
}

/// Reads samples from either a JSON sample file or a CSV table.
pub fn parse_samples(text: &str) -> Result<Vec<(Vec<i64>, Value)>> {
    if text.trim_start().starts_with('{') {
        let f: SampleFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(f.samples.into_iter().map(|r| (r.kac, r.value)).collect())
    } else {
        read_samples_csv(text.as_bytes())
    }
}

/// Writes `kac,q,eps` rows.
pub fn write_points_csv<W: Write>(out: W, points: &[GridPoint]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["kac", "q", "eps"]).map_err(csv_err)?;
    for p in points {
        w.write_record([join(&p.kac.coords), join(&p.q), p.eps.to_string()]).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))
}

/// Writes `kac,h` rows.
pub fn write_weights_csv<W: Write>(out: W, weights: &[GridWeight]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["kac", "h"]).map_err(csv_err)?;
    for x in weights {
        w.write_record([join(&x.kac.coords), x.h.to_string()]).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))
}

/// Writes `kac,h,re,im` rows; real coefficients have `im = 0`.
pub fn write_spectrum_csv<W: Write>(out: W, file: &SpectrumFile) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["kac", "h", "re", "im"]).map_err(csv_err)?;
    for c in &file.coefficients {
        let z = c.value.complex();
        w.write_record([join(&c.kac), c.h.to_string(), z.re.to_string(), z.im.to_string()])
            .map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))
}

/// One row of a counting sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub algebra: AlgebraType,
    pub sigma: SignHom,
    #[serde(rename = "M")]
    pub level: i64,
    pub closed_form: String,
    pub burnside: String,
    pub enum_points: String,
    pub enum_weights: String,
    pub agree: bool,
}

pub fn write_counts_csv<W: Write>(out: W, rows: &[CountRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))
}
