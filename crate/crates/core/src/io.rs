//! Matrix and report serialization: CSV (row per line) and JSON
//! {field, rows, cols, entries, entries_im?}.

use crate::error::{Error, Result};
use crate::matnorm::{NormKind, NormResult};
use crate::matrix::Matrix;
use crate::tensornorm::TensorNormEstimate;
use crate::{ComplexMatrix, Exponent, RealMatrix};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// A field-tagged dense matrix as it crosses the process boundary.
#[derive(Clone, Debug)]
pub enum MatrixData {
    Real(RealMatrix),
    Complex(ComplexMatrix),
}

impl MatrixData {
    pub fn rows(&self) -> usize {
        match self {
            MatrixData::Real(m) => m.rows(),
            MatrixData::Complex(m) => m.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            MatrixData::Real(m) => m.cols(),
            MatrixData::Complex(m) => m.cols(),
        }
    }
}

/// Parse a CSV matrix: one row per line, comma-separated entries.
/// Blank lines are ignored; errors carry 1-based line numbers.
pub fn parse_matrix_csv(text: &str) -> Result<RealMatrix> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width: Option<usize> = None;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for cell in line.split(',') {
            let v: f64 = cell.trim().parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("cannot parse {:?} as a number", cell.trim()),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    line: line_no,
                    msg: "entries must be finite".into(),
                });
            }
            row.push(v);
        }
        if let Some(w) = width {
            if row.len() != w {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected {w} entries, found {}", row.len()),
                });
            }
        } else {
            width = Some(row.len());
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 0,
            msg: "no rows in matrix file".into(),
        });
    }
    Matrix::from_rows(&rows)
}

pub fn matrix_to_csv(m: &RealMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn int_matrix_to_csv(m: &crate::IntMatrix) -> String {
    matrix_to_csv(&m.to_entry::<f64>())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub field: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entries_im: Option<Vec<f64>>,
}

pub fn parse_matrix_json(text: &str) -> Result<MatrixData> {
    let mj: MatrixJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    matrix_from_json(&mj)
}

pub fn matrix_from_json(mj: &MatrixJson) -> Result<MatrixData> {
    if mj.entries.len() != mj.rows * mj.cols {
        return Err(Error::Dimension(format!(
            "{}x{} matrix needs {} entries, got {}",
            mj.rows,
            mj.cols,
            mj.rows * mj.cols,
            mj.entries.len()
        )));
    }
    if mj.entries.iter().any(|v| !v.is_finite()) {
        return Err(Error::Degenerate("entries must be finite"));
    }
    match mj.field.as_str() {
        "real" => {
            if mj.entries_im.is_some() {
                return Err(Error::Degenerate("real matrix with entries_im"));
            }
            Ok(MatrixData::Real(Matrix::new(
                mj.rows,
                mj.cols,
                mj.entries.clone(),
            )?))
        }
        "complex" => {
            let im = match &mj.entries_im {
                Some(im) => {
                    if im.len() != mj.entries.len() {
                        return Err(Error::Dimension(
                            "entries_im length differs from entries".into(),
                        ));
                    }
                    if im.iter().any(|v| !v.is_finite()) {
                        return Err(Error::Degenerate("entries must be finite"));
                    }
                    im.clone()
                }
                None => vec![0.0; mj.entries.len()],
            };
            let data: Vec<Complex64> = mj
                .entries
                .iter()
                .zip(&im)
                .map(|(&re, &im)| Complex64::new(re, im))
                .collect();
            Ok(MatrixData::Complex(Matrix::new(mj.rows, mj.cols, data)?))
        }
        _ => Err(Error::Degenerate("field must be \"real\" or \"complex\"")),
    }
}

pub fn matrix_to_json(m: &MatrixData) -> MatrixJson {
    match m {
        MatrixData::Real(m) => MatrixJson {
            field: "real".into(),
            rows: m.rows(),
            cols: m.cols(),
            entries: m.as_slice().to_vec(),
            entries_im: None,
        },
        MatrixData::Complex(m) => MatrixJson {
            field: "complex".into(),
            rows: m.rows(),
            cols: m.cols(),
            entries: m.as_slice().iter().map(|z| z.re).collect(),
            entries_im: Some(m.as_slice().iter().map(|z| z.im).collect()),
        },
    }
}

pub fn norm_kind_str(kind: NormKind) -> &'static str {
    match kind {
        NormKind::Exact => "exact",
        NormKind::LowerBound => "lower-bound",
    }
}

/// {value, kind, p, q, certificate?}
pub fn norm_result_json(r: &NormResult<f64>, p: Exponent, q: Exponent) -> Value {
    let mut v = json!({
        "value": r.value,
        "kind": norm_kind_str(r.kind),
        "p": p.to_string(),
        "q": q.to_string(),
    });
    if let Some(cert) = &r.certificate {
        v["certificate"] = json!(cert);
    }
    v
}

pub fn complex_norm_result_json(
    r: &NormResult<Complex64>,
    p: Exponent,
    q: Exponent,
) -> Value {
    let mut v = json!({
        "value": r.value,
        "kind": norm_kind_str(r.kind),
        "p": p.to_string(),
        "q": q.to_string(),
    });
    if let Some(cert) = &r.certificate {
        v["certificate"] = json!(cert.iter().map(|z| z.re).collect::<Vec<_>>());
        v["certificate_im"] = json!(cert.iter().map(|z| z.im).collect::<Vec<_>>());
    }
    v
}

/// {dims, triple, value, certificate{X,M,Y}, seed, restarts, iterations}
pub fn estimate_json(est: &TensorNormEstimate<f64>) -> Value {
    json!({
        "dims": [est.dims.0, est.dims.1, est.dims.2],
        "triple": [
            est.triple.p.to_string(),
            est.triple.q.to_string(),
            est.triple.r.to_string()
        ],
        "value": est.value,
        "sound": est.sound,
        "certificate": {
            "X": matrix_to_json(&MatrixData::Real(est.certificate.x.clone())),
            "M": matrix_to_json(&MatrixData::Real(est.certificate.m.clone())),
            "Y": matrix_to_json(&MatrixData::Real(est.certificate.y.clone())),
        },
        "seed": est.seed,
        "restarts": est.restarts_used,
        "iterations": est.iterations,
    })
}
