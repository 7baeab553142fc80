// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unknown site `{0}`")]
    UnknownSite(String),

    #[error("invalid layout: {0}")]
    InvalidLayout(String),

    #[error("matrix is not Hermitian (violation norm {violation:.3e})")]
    NotHermitian { violation: f64 },

    #[error("matrix is not unitary (deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("Kraus operators are incomplete (deficit norm {deficit:.3e})")]
    IncompleteKraus { deficit: f64 },

    #[error("invalid pseudo-density matrix: {0}")]
    InvalidPdm(String),

    #[error("correlator table incomplete: {missing} entries missing")]
    IncompleteTable { missing: usize },

    #[error("invalid correlator table: {0}")]
    InvalidTable(String),

    #[error("initial marginal is rank deficient (smallest eigenvalue sum {min_denominator:.3e})")]
    RankDeficient { min_denominator: f64 },

    #[error("SDP constraints are infeasible (linear residual {residual:.3e})")]
    SdpInfeasible { residual: f64 },

    #[error(
        "SDP did not converge after {iterations} iterations \
         (primal residual {primal_residual:.3e}, dual residual {dual_residual:.3e})"
    )]
    SdpNotConverged {
        iterations: usize,
        primal_residual: f64,
        dual_residual: f64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
