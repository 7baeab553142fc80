// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

//! Recovery of the CJ matrix from a PDM.
//!
//! With `ρ₁ = Tr₂ R` full rank, `R = ½{ρ₁ ⊗ 𝟙, M}` has exactly one solution
//! and [`spectral_solve`] computes it. Otherwise the solution set is affine
//! and [`sdp_solve`] picks the member whose Choi matrix is least negative.

pub mod sdp;
pub mod spectral;

use serde::{Deserialize, Serialize};

use crate::channels::{tp_deviation, ChannelCJ, DensityMatrix};
use crate::error::{Error, Result};
use crate::io::MatrixJson;
use crate::pdm::{negativity, time_reverse, Pdm, TimeSlice};
use crate::tensor::{eigenvalues_hermitian, kron, partial_transpose, ComplexMatrix, QubitLayout};

pub use sdp::{sdp_solve_matrix, SdpOutcome, MAX_SDP_DIM};
pub use spectral::spectral_solve_matrix;

/// Acceptance bound on both the reconstruction residual and the
/// trace-preservation deviation.
pub const ACCEPT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SdpConfig {
    pub max_iterations: usize,
    pub primal_tol: f64,
    pub dual_tol: f64,
    /// `ρ₁` counts as full rank when its smallest eigenvalue exceeds this.
    pub rank_threshold: f64,
    /// ADMM penalty parameter.
    pub penalty: f64,
}

impl Default for SdpConfig {
    fn default() -> Self {
        Self {
            max_iterations: 20_000,
            primal_tol: 1e-10,
            dual_tol: 1e-10,
            rank_threshold: 1e-8,
            penalty: 1.0,
        }
    }
}

impl SdpConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.primal_tol) || !positive(self.dual_tol) || !positive(self.penalty) {
            return Err(Error::InvalidArgument(
                "SDP tolerances and penalty must be positive".into(),
            ));
        }
        if !(self.rank_threshold.is_finite() && self.rank_threshold >= 0.0) {
            return Err(Error::InvalidArgument("rank threshold must be ≥ 0".into()));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidArgument("max_iterations must be ≥ 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtractionMethod {
    Spectral,
    Sdp,
}

#[derive(Debug, Clone)]
pub struct ExtractionResult {
    pub m: ComplexMatrix,
    pub in_layout: QubitLayout,
    pub out_layout: QubitLayout,
    pub method: ExtractionMethod,
    /// `‖½{ρ₁ ⊗ 𝟙, M} − R‖_F`.
    pub residual: f64,
    /// `‖Tr_out M − 𝟙‖_F`.
    pub tp_deviation: f64,
    /// Sum of the negative Choi eigenvalue magnitudes (SDP only).
    pub objective: Option<f64>,
    pub iterations: usize,
    /// Dimension of the feasible affine set (SDP only). Nonzero means the
    /// optimum reached may not be the only one.
    pub nullity: Option<usize>,
}

impl ExtractionResult {
    pub fn is_accepted(&self) -> bool {
        self.residual < ACCEPT_TOL && self.tp_deviation < ACCEPT_TOL
    }

    pub fn may_be_non_unique(&self) -> bool {
        self.nullity.is_some_and(|n| n > 0)
    }

    pub fn layout(&self) -> QubitLayout {
        self.in_layout.concat(&self.out_layout).expect("PDM labels are distinct")
    }

    pub fn choi(&self) -> ComplexMatrix {
        choi_of(&self.m, &self.layout(), self.in_layout.labels()).expect("own layout")
    }

    pub fn choi_eigenvalues(&self) -> Vec<f64> {
        eigenvalues_hermitian(&self.choi()).expect("Hermitian M")
    }

    /// `f` of the Choi matrix.
    pub fn negativity(&self) -> f64 {
        negativity(&self.choi()).expect("Hermitian M")
    }

    /// Validated channel; fails when `M` is not trace preserving within
    /// [`crate::channels::TP_TOL`].
    pub fn to_channel(&self) -> Result<ChannelCJ> {
        ChannelCJ::from_matrix(self.m.clone(), self.in_layout.clone(), self.out_layout.clone())
    }

    pub fn to_json(&self) -> ExtractionJson {
        ExtractionJson {
            method: self.method,
            residual: self.residual,
            tp_deviation: self.tp_deviation,
            objective: self.objective,
            iterations: self.iterations,
            nullity: self.nullity,
            in_labels: self.in_layout.labels().to_vec(),
            out_labels: self.out_layout.labels().to_vec(),
            matrix: MatrixJson::from_matrix(&self.m),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtractionJson {
    pub method: ExtractionMethod,
    pub residual: f64,
    pub tp_deviation: f64,
    pub objective: Option<f64>,
    pub iterations: usize,
    pub nullity: Option<usize>,
    pub in_labels: Vec<String>,
    pub out_labels: Vec<String>,
    #[serde(flatten)]
    pub matrix: MatrixJson,
}

/// Partial transpose of `m` on the `input` sites of `layout`.
pub fn choi_of<S: AsRef<str>>(m: &ComplexMatrix, layout: &QubitLayout, input: &[S]) -> Result<ComplexMatrix> {
    partial_transpose(m, layout, input)
}

fn reconstruction_residual(r: &ComplexMatrix, rho: &ComplexMatrix, m: &ComplexMatrix) -> f64 {
    let dout = r.dim() / rho.dim();
    let p = kron(rho, &ComplexMatrix::identity(dout));
    ComplexMatrix::anticommutator(&p, m).scale_real(0.5).distance(r)
}

fn finish(
    r: &Pdm,
    rho: &ComplexMatrix,
    m: ComplexMatrix,
    method: ExtractionMethod,
    objective: Option<f64>,
    iterations: usize,
    nullity: Option<usize>,
) -> ExtractionResult {
    ExtractionResult {
        residual: reconstruction_residual(r.matrix(), rho, &m),
        tp_deviation: tp_deviation(&m, r.t1_dim(), r.t2_dim()),
        in_layout: r.t1_layout(),
        out_layout: r.t2_layout(),
        m,
        method,
        objective,
        iterations,
        nullity,
    }
}

/// Unique solution for a full-rank `rho1`.
pub fn spectral_solve(r: &Pdm, rho1: &DensityMatrix) -> Result<ComplexMatrix> {
    if rho1.dim() != r.t1_dim() {
        return Err(Error::DimensionMismatch {
            expected: r.t1_dim(),
            found: rho1.dim(),
        });
    }
    spectral_solve_matrix(r.matrix(), rho1.matrix())
}

/// Least-negative-Choi solution using the PDM's own time-1 marginal.
pub fn sdp_solve(r: &Pdm, cfg: &SdpConfig) -> Result<ExtractionResult> {
    let rho = r.marginal_matrix(TimeSlice::T1);
    let out = sdp_solve_matrix(r.matrix(), &rho, cfg)?;
    Ok(finish(
        r,
        &rho,
        out.m,
        ExtractionMethod::Sdp,
        Some(out.objective),
        out.iterations,
        Some(out.nullity),
    ))
}

/// Spectral solve when the time-1 marginal is full rank, SDP otherwise.
/// The marginal is used as computed; it is not required to be positive.
pub fn extract_cj(r: &Pdm, cfg: &SdpConfig) -> Result<ExtractionResult> {
    cfg.validate()?;
    let rho = r.marginal_matrix(TimeSlice::T1);
    let min = eigenvalues_hermitian(&rho)?[0];
    if min > cfg.rank_threshold {
        let m = spectral_solve_matrix(r.matrix(), &rho)?;
        Ok(finish(r, &rho, m, ExtractionMethod::Spectral, None, 0, None))
    } else {
        sdp_solve(r, cfg)
    }
}

/// Extractions for both time orderings of one PDM.
#[derive(Debug, Clone)]
pub struct DirectionalAnalysis {
    pub forward: ExtractionResult,
    pub reverse: ExtractionResult,
    pub f_forward: f64,
    pub f_reverse: f64,
}

pub fn reverse_choi_pipeline(r: &Pdm, cfg: &SdpConfig) -> Result<DirectionalAnalysis> {
    let forward = extract_cj(r, cfg)?;
    let reverse = extract_cj(&time_reverse(r), cfg)?;
    Ok(DirectionalAnalysis {
        f_forward: forward.negativity(),
        f_reverse: reverse.negativity(),
        forward,
        reverse,
    })
}
