// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

//! JSON matrix format shared by every serialized object.
//!
//! ```json
//! { "dim": 2, "re": [[1, 0], [0, 0]], "im": [[0, 0], [0, 0]] }
//! ```
//! `re` and `im` are row-major `dim × dim` arrays. `im` may be omitted for
//! real matrices. Floats are written in shortest round-trip form.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{ComplexMatrix, MAX_DIM};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let n = m.dim();
        let rows = |f: fn(&C64) -> f64| -> Vec<Vec<f64>> {
            (0..n).map(|i| (0..n).map(|j| f(&m[(i, j)])).collect()).collect()
        };
        Self {
            dim: n,
            re: rows(|z| z.re),
            im: Some(rows(|z| z.im)),
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let n = self.dim;
        if n == 0 || n > MAX_DIM {
            return Err(Error::Parse(format!("matrix dim {n} outside 1..={MAX_DIM}")));
        }
        let check = |name: &str, rows: &[Vec<f64>]| -> Result<()> {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::Parse(format!("`{name}` must be a {n}×{n} array")));
            }
            if rows.iter().flatten().any(|x| !x.is_finite()) {
                return Err(Error::Parse(format!("`{name}` contains a non-finite value")));
            }
            Ok(())
        };
        check("re", &self.re)?;
        if let Some(im) = &self.im {
            check("im", im)?;
        }
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let im = self.im.as_ref().map_or(0.0, |im| im[i][j]);
                data.push(C64::new(self.re[i][j], im));
            }
        }
        ComplexMatrix::from_vec(n, data)
    }
}

pub fn matrix_to_json(m: &ComplexMatrix) -> String {
    serde_json::to_string_pretty(&MatrixJson::from_matrix(m)).expect("finite matrix serializes")
}

pub fn matrix_from_json(s: &str) -> Result<ComplexMatrix> {
    serde_json::from_str::<MatrixJson>(s)?.to_matrix()
}
