// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

//! CSV and JSON renderings of sweep results.
//!
//! Floats are written deterministically so that equal inputs give
//! byte-identical files.

use serde::Serialize;

use super::sweep::{SweepPoint, SweepRecord};
use crate::error::Result;

pub const CSV_HEADER: &str = "param,eig_r_1,eig_r_2,eig_r_3,eig_r_4,f_pdm,f_fwd,f_rev,verdict";

/// Shortest round-trip decimal; scientific notation outside `[1e-4, 1e15)`.
/// Negative zero is written as `0`.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let a = x.abs();
    if (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn csv_row(out: &mut String, p: &SweepPoint) {
    out.push_str(&format_float(p.param));
    match &p.outcome {
        Ok(r) => {
            for i in 0..4 {
                out.push(',');
                if let Some(&e) = r.pdm_eigenvalues.get(i) {
                    out.push_str(&format_float(e));
                }
            }
            for v in [r.f_pdm, r.f_forward, r.f_reverse] {
                out.push(',');
                out.push_str(&format_float(v));
            }
            out.push(',');
            out.push_str(r.verdict.as_str());
        }
        Err(_) => out.push_str(",,,,,,,,Error"),
    }
    out.push('\n');
}

/// One header line and one row per point, in the given order. Failed points
/// keep their parameter, leave the numeric fields empty and read `Error`.
pub fn records_to_csv(points: &[SweepPoint]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for p in points {
        csv_row(&mut out, p);
    }
    out
}

#[derive(Serialize)]
#[serde(untagged)]
enum JsonPoint<'a> {
    Record(&'a SweepRecord),
    Failed { param: f64, error: String },
}

/// Pretty-printed JSON array with one object per point.
pub fn records_to_json(points: &[SweepPoint]) -> Result<String> {
    let rows: Vec<JsonPoint<'_>> = points
        .iter()
        .map(|p| match &p.outcome {
            Ok(r) => JsonPoint::Record(r),
            Err(e) => JsonPoint::Failed {
                param: p.param,
                error: e.to_string(),
            },
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&rows)?;
    s.push('\n');
    Ok(s)
}
