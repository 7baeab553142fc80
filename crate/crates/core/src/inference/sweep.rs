// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

//! Parameter sweeps over the relay and decohering experiments.
//!
//! Every point prepares `ρ = λ|+⟩⟨+| + (1 − λ)𝟙/2` on `A`, sends it through
//! the channel, assembles `R_AB`, extracts both Choi matrices and classifies.
//! Points are independent and evaluated in parallel; results keep grid order.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::noise::{point_seed, sample_correlators};
use super::{default_epsilon, infer, VerdictKind};
use crate::channels::{
    decohering_dilation, fully_decohering_cj, relay_channel, relay_dilation, DensityMatrix,
    UnitaryDilation,
};
use crate::error::{Error, Result};
use crate::extraction::{ExtractionMethod, SdpConfig};
use crate::pdm::{pdm_closed_form, pdm_from_correlators, CorrelatorTable, Pdm};
use crate::scattering::correlator_via_dilation;
use crate::tensor::ComplexMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepFamily {
    /// Relay channel strength `θ` at fixed polarization.
    ThetaSweep,
    /// Input polarization `λ` through the relay channel at fixed `θ`.
    LambdaSweep,
    /// Input polarization `λ` through the fully decohering channel.
    DecohereSweep,
}

/// How the PDM of each point is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrelatorRoute {
    /// `½{ρ ⊗ 𝟙, M}` from the channel's CJ matrix.
    #[default]
    ClosedForm,
    /// Correlators read out by the probe interferometer on the dilation.
    Scattering,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub family: SweepFamily,
    pub grid: Vec<f64>,
    pub lambda: Option<f64>,
    pub theta: Option<f64>,
    pub shots: Option<u64>,
    pub seed: Option<u64>,
    /// Defaults to [`default_epsilon`] of `shots`.
    pub epsilon: Option<f64>,
    pub route: CorrelatorRoute,
    pub sdp: SdpConfig,
}

impl SweepSpec {
    pub fn new(family: SweepFamily, grid: Vec<f64>) -> Self {
        Self {
            family,
            grid,
            lambda: None,
            theta: None,
            shots: None,
            seed: None,
            epsilon: None,
            route: CorrelatorRoute::default(),
            sdp: SdpConfig::default(),
        }
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon.unwrap_or_else(|| default_epsilon(self.shots))
    }

    pub fn validate(&self) -> Result<()> {
        let check_theta = |t: f64| -> Result<()> {
            if !(0.0..=TAU).contains(&t) {
                return Err(Error::InvalidArgument(format!("theta {t} outside [0, 2π]")));
            }
            Ok(())
        };
        let check_lambda = |l: f64| -> Result<()> {
            if !(0.0..=1.0).contains(&l) {
                return Err(Error::InvalidArgument(format!("lambda {l} outside [0, 1]")));
            }
            Ok(())
        };
        if self.grid.is_empty() {
            return Err(Error::InvalidArgument("empty grid".into()));
        }
        match self.family {
            SweepFamily::ThetaSweep => {
                self.grid.iter().try_for_each(|&t| check_theta(t))?;
                check_lambda(self.lambda.ok_or_else(|| {
                    Error::InvalidArgument("theta sweep needs a fixed lambda".into())
                })?)?;
            }
            SweepFamily::LambdaSweep => {
                self.grid.iter().try_for_each(|&l| check_lambda(l))?;
                check_theta(self.theta.ok_or_else(|| {
                    Error::InvalidArgument("lambda sweep needs a fixed theta".into())
                })?)?;
            }
            SweepFamily::DecohereSweep => {
                self.grid.iter().try_for_each(|&l| check_lambda(l))?;
            }
        }
        if self.shots == Some(0) {
            return Err(Error::InvalidArgument("shots must be ≥ 1".into()));
        }
        if let Some(e) = self.epsilon {
            if !(e.is_finite() && e > 0.0) {
                return Err(Error::InvalidArgument(format!("epsilon must be > 0, got {e}")));
            }
        }
        self.sdp.validate()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub param: f64,
    pub pdm_eigenvalues: Vec<f64>,
    pub f_pdm: f64,
    pub forward_choi_eigenvalues: Vec<f64>,
    pub reverse_choi_eigenvalues: Vec<f64>,
    pub f_forward: f64,
    pub f_reverse: f64,
    pub verdict: VerdictKind,
    pub epsilon: f64,
    pub forward_method: ExtractionMethod,
    pub reverse_method: ExtractionMethod,
    /// Extracted forward CJ matrix.
    #[serde(skip)]
    pub forward_cj: ComplexMatrix,
}

/// One grid point; failures are kept so the sweep can continue.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub param: f64,
    pub outcome: std::result::Result<SweepRecord, Error>,
}

fn sampled(spec: &SweepSpec, param: f64, table: CorrelatorTable) -> Result<CorrelatorTable> {
    match spec.shots {
        Some(shots) => sample_correlators(&table, shots, point_seed(spec.seed.unwrap_or(0), param)),
        None => Ok(table),
    }
}

fn scattering_table(d: &UnitaryDilation, rho: &DensityMatrix) -> Result<CorrelatorTable> {
    CorrelatorTable::from_fn(1, |a, b| correlator_via_dilation(d, rho, a, b))
}

fn build_pdm(spec: &SweepSpec, param: f64) -> Result<Pdm> {
    let (lambda, theta) = match spec.family {
        SweepFamily::ThetaSweep => (spec.lambda.expect("validated"), Some(param)),
        SweepFamily::LambdaSweep => (param, Some(spec.theta.expect("validated"))),
        SweepFamily::DecohereSweep => (param, None),
    };
    let rho = DensityMatrix::polarized_plus(lambda, "A")?;
    match spec.route {
        CorrelatorRoute::ClosedForm => {
            let channel = theta.map_or_else(fully_decohering_cj, relay_channel);
            let r = pdm_closed_form(&rho, &channel)?;
            if spec.shots.is_none() {
                return Ok(r);
            }
            pdm_from_correlators(&sampled(spec, param, CorrelatorTable::from_pdm(&r)?)?)
        }
        CorrelatorRoute::Scattering => {
            let d = theta.map_or_else(decohering_dilation, relay_dilation);
            pdm_from_correlators(&sampled(spec, param, scattering_table(&d, &rho)?)?)
        }
    }
}

fn run_point(spec: &SweepSpec, param: f64) -> Result<SweepRecord> {
    let r = build_pdm(spec, param)?;
    let inf = infer(&r, spec.epsilon(), &spec.sdp)?;
    let d = &inf.directions;
    Ok(SweepRecord {
        param,
        pdm_eigenvalues: inf.pdm_eigenvalues,
        f_pdm: inf.verdict.f_pdm,
        forward_choi_eigenvalues: d.forward.choi_eigenvalues(),
        reverse_choi_eigenvalues: d.reverse.choi_eigenvalues(),
        f_forward: d.f_forward,
        f_reverse: d.f_reverse,
        verdict: inf.verdict.kind,
        epsilon: inf.verdict.epsilon,
        forward_method: d.forward.method,
        reverse_method: d.reverse.method,
        forward_cj: d.forward.m.clone(),
    })
}

pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepPoint>> {
    spec.validate()?;
    Ok(spec
        .grid
        .par_iter()
        .map(|&param| SweepPoint {
            param,
            outcome: run_point(spec, param),
        })
        .collect())
}

fn run_family(spec: &SweepSpec, family: SweepFamily) -> Result<Vec<SweepPoint>> {
    if spec.family != family {
        return Err(Error::InvalidArgument(format!(
            "expected a {family:?} spec, got {:?}",
            spec.family
        )));
    }
    run_sweep(spec)
}

pub fn run_theta_sweep(spec: &SweepSpec) -> Result<Vec<SweepPoint>> {
    run_family(spec, SweepFamily::ThetaSweep)
}

pub fn run_lambda_sweep(spec: &SweepSpec) -> Result<Vec<SweepPoint>> {
    run_family(spec, SweepFamily::LambdaSweep)
}

pub fn run_decohere_sweep(spec: &SweepSpec) -> Result<Vec<SweepPoint>> {
    run_family(spec, SweepFamily::DecohereSweep)
}
