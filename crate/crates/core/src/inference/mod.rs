// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

//! Causal classification from the negativities of a PDM and of the Choi
//! matrices extracted in both time orderings.
//!
//! | `f(R)` | `f(M₁₂ᵀ)` | `f(M₂₁ᵀ)` | verdict           |
//! |--------|-----------|-----------|-------------------|
//! | ≤ ε    | any       | any       | `CommonCause`     |
//! | > ε    | ≤ ε       | > ε       | `AtoB`            |
//! | > ε    | > ε       | ≤ ε       | `BtoA`            |
//! | > ε    | ≤ ε       | ≤ ε       | `EitherDirection` |
//! | > ε    | > ε       | > ε       | `Mixture`         |

mod noise;
mod output;
mod sweep;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extraction::{reverse_choi_pipeline, DirectionalAnalysis, SdpConfig};
use crate::pdm::{negativity, Pdm};

pub use noise::{point_seed, sample_correlators};
pub use output::{format_float, records_to_csv, records_to_json, CSV_HEADER};
pub use sweep::{
    run_decohere_sweep, run_lambda_sweep, run_sweep, run_theta_sweep, CorrelatorRoute,
    SweepFamily, SweepPoint, SweepRecord, SweepSpec,
};

/// Threshold for noiseless data.
pub const DEFAULT_EPSILON: f64 = 1e-6;

/// `3/√shots` for sampled data, [`DEFAULT_EPSILON`] otherwise.
pub fn default_epsilon(shots: Option<u64>) -> f64 {
    match shots {
        Some(s) if s > 0 => 3.0 / (s as f64).sqrt(),
        _ => DEFAULT_EPSILON,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerdictKind {
    CommonCause,
    AtoB,
    BtoA,
    EitherDirection,
    Mixture,
}

impl VerdictKind {
    pub const ALL: [VerdictKind; 5] = [
        VerdictKind::CommonCause,
        VerdictKind::AtoB,
        VerdictKind::BtoA,
        VerdictKind::EitherDirection,
        VerdictKind::Mixture,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::CommonCause => "CommonCause",
            VerdictKind::AtoB => "AtoB",
            VerdictKind::BtoA => "BtoA",
            VerdictKind::EitherDirection => "EitherDirection",
            VerdictKind::Mixture => "Mixture",
        }
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for VerdictKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown verdict `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CausalVerdict {
    pub kind: VerdictKind,
    pub f_pdm: f64,
    pub f_forward: f64,
    pub f_reverse: f64,
    pub epsilon: f64,
}

pub fn classify(f_pdm: f64, f_fwd: f64, f_rev: f64, epsilon: f64) -> Result<CausalVerdict> {
    for (name, v) in [("f_pdm", f_pdm), ("f_fwd", f_fwd), ("f_rev", f_rev)] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(Error::InvalidArgument(format!("{name} must be ≥ 0, got {v}")));
        }
    }
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::InvalidArgument(format!("epsilon must be > 0, got {epsilon}")));
    }
    let kind = if f_pdm <= epsilon {
        VerdictKind::CommonCause
    } else {
        match (f_fwd <= epsilon, f_rev <= epsilon) {
            (true, false) => VerdictKind::AtoB,
            (false, true) => VerdictKind::BtoA,
            (true, true) => VerdictKind::EitherDirection,
            (false, false) => VerdictKind::Mixture,
        }
    };
    Ok(CausalVerdict {
        kind,
        f_pdm,
        f_forward: f_fwd,
        f_reverse: f_rev,
        epsilon,
    })
}

/// Full analysis of one PDM.
#[derive(Debug, Clone)]
pub struct Inference {
    pub verdict: CausalVerdict,
    pub pdm_eigenvalues: Vec<f64>,
    pub directions: DirectionalAnalysis,
}

pub fn infer(r: &Pdm, epsilon: f64, cfg: &SdpConfig) -> Result<Inference> {
    let f_pdm = negativity(r.matrix())?;
    let directions = reverse_choi_pipeline(r, cfg)?;
    let verdict = classify(f_pdm, directions.f_forward, directions.f_reverse, epsilon)?;
    Ok(Inference {
        verdict,
        pdm_eigenvalues: r.eigenvalues(),
        directions,
    })
}
