// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

//! JSON form of a scattering experiment.
//!
//! ```json
//! {
//!   "sites": ["A", "C", "E"],
//!   "initial": ["polarized(0.7)", "zero", "zero"],
//!   "gates": ["swap(A, C)", "partial_swap(3pi/8, C, E)"],
//!   "p1": "ZII",
//!   "p2": "IIZ"
//! }
//! ```
//! `initial` lists one named state per site (see
//! [`DensityMatrix::from_spec`]); alternatively `initial_matrix` gives the
//! whole register state in the matrix format. Gates use the
//! [`Gate`](crate::channels::Gate) grammar.

use serde::{Deserialize, Serialize};

use super::ScatteringSpec;
use crate::channels::{DensityMatrix, Gate};
use crate::error::{Error, Result};
use crate::io::MatrixJson;
use crate::tensor::{PauliString, QubitLayout};

const MAX_GATES: usize = 1024;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScatteringDocument {
    pub sites: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_matrix: Option<MatrixJson>,
    #[serde(default)]
    pub gates: Vec<String>,
    pub p1: String,
    pub p2: String,
}

impl ScatteringDocument {
    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_spec(&self) -> Result<ScatteringSpec> {
        let register = QubitLayout::qubits(&self.sites)?;
        let state = match (&self.initial, &self.initial_matrix) {
            (Some(names), None) => {
                if names.len() != self.sites.len() {
                    return Err(Error::Parse(format!(
                        "`initial` lists {} states for {} sites",
                        names.len(),
                        self.sites.len()
                    )));
                }
                let states = names
                    .iter()
                    .zip(&self.sites)
                    .map(|(n, s)| DensityMatrix::from_spec(n, s))
                    .collect::<Result<Vec<_>>>()?;
                DensityMatrix::product(&states)?
            }
            (None, Some(m)) => DensityMatrix::new(m.to_matrix()?, register.clone())?,
            _ => {
                return Err(Error::Parse(
                    "exactly one of `initial` and `initial_matrix` is required".into(),
                ))
            }
        };
        if self.gates.len() > MAX_GATES {
            return Err(Error::Parse(format!("at most {MAX_GATES} gates allowed")));
        }
        let evolution = self
            .gates
            .iter()
            .map(|g| g.parse::<Gate>()?.unitary(&register))
            .collect::<Result<Vec<_>>>()?;
        let p1: PauliString = self.p1.parse()?;
        let p2: PauliString = self.p2.parse()?;
        ScatteringSpec::new(state, evolution, p1, p2)
    }
}
