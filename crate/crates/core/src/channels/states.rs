// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

//! Validated density matrices and unitaries.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::expr::parse_real;
use crate::tensor::{eigenvalues_hermitian, kron, ComplexMatrix, QubitLayout, HERMITIAN_TOL};

/// Hermitian, unit-trace, positive semidefinite (all within `1e-10`).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    layout: QubitLayout,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix, layout: QubitLayout) -> Result<Self> {
        if mat.dim() != layout.dim() {
            return Err(Error::DimensionMismatch {
                expected: layout.dim(),
                found: mat.dim(),
            });
        }
        let violation = mat.hermiticity_violation();
        if violation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { violation });
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > HERMITIAN_TOL || tr.im.abs() > HERMITIAN_TOL {
            return Err(Error::InvalidState(format!("trace is {tr}, expected 1")));
        }
        let min = eigenvalues_hermitian(&mat)?[0];
        if min < -HERMITIAN_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:.3e}")));
        }
        Ok(Self {
            mat: mat.hermitian_part(),
            layout,
        })
    }

    /// Single-qubit state on a site labelled `label`.
    pub fn qubit(mat: ComplexMatrix, label: &str) -> Result<Self> {
        Self::new(mat, QubitLayout::qubits(&[label])?)
    }

    pub fn zero(label: &str) -> Self {
        Self::qubit(ComplexMatrix::diagonal(&[1.0, 0.0]), label).expect("valid state")
    }

    pub fn one(label: &str) -> Self {
        Self::qubit(ComplexMatrix::diagonal(&[0.0, 1.0]), label).expect("valid state")
    }

    pub fn plus(label: &str) -> Self {
        Self::polarized_plus(1.0, label).expect("valid state")
    }

    pub fn minus(label: &str) -> Self {
        let m = ComplexMatrix::from_real_rows(&[&[0.5, -0.5], &[-0.5, 0.5]]);
        Self::qubit(m, label).expect("valid state")
    }

    /// `λ|+⟩⟨+| + (1 − λ) 𝟙/2`, the input family with polarization `λ ∈ [0, 1]`.
    pub fn polarized_plus(lambda: f64, label: &str) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidArgument(format!(
                "polarization {lambda} outside [0, 1]"
            )));
        }
        let h = 0.5 * lambda;
        Self::qubit(ComplexMatrix::from_real_rows(&[&[0.5, h], &[h, 0.5]]), label)
    }

    pub fn maximally_mixed(layout: QubitLayout) -> Self {
        let d = layout.dim();
        Self::new(ComplexMatrix::identity(d).scale_real(1.0 / d as f64), layout)
            .expect("valid state")
    }

    /// Pure state `|ψ⟩⟨ψ|`; `psi` is normalized here.
    pub fn pure(psi: &[C64], layout: QubitLayout) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidState("zero state vector".into()));
        }
        let v: Vec<C64> = psi.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::outer(&v, &v), layout)
    }

    /// Parses a named single-qubit state: `zero`/`0`, `one`/`1`, `plus`/`+`,
    /// `minus`/`-`, `mixed`/`maximally-mixed`, or `polarized(λ)` with `λ` an
    /// expression in `[0, 1]`.
    pub fn from_spec(spec: &str, label: &str) -> Result<Self> {
        let s = spec.trim().to_ascii_lowercase();
        match s.as_str() {
            "zero" | "0" => return Ok(Self::zero(label)),
            "one" | "1" => return Ok(Self::one(label)),
            "plus" | "+" => return Ok(Self::plus(label)),
            "minus" | "-" => return Ok(Self::minus(label)),
            "mixed" | "maximally-mixed" | "maximally_mixed" => {
                return Ok(Self::maximally_mixed(QubitLayout::qubits(&[label])?))
            }
            _ => {}
        }
        let arg = s
            .strip_prefix("polarized(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("unknown state `{spec}`")))?;
        Self::polarized_plus(parse_real(arg)?, label)
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        Self::new(kron(&self.mat, &other.mat), self.layout.concat(&other.layout)?)
    }

    pub fn product(states: &[DensityMatrix]) -> Result<Self> {
        let (first, rest) = states
            .split_first()
            .ok_or_else(|| Error::InvalidArgument("empty product state".into()))?;
        rest.iter().try_fold(first.clone(), |acc, s| acc.tensor(s))
    }

    pub fn relabel(&self, layout: QubitLayout) -> Result<Self> {
        if layout.factors() != self.layout.factors() {
            return Err(Error::InvalidLayout("relabel must keep factor dimensions".into()));
        }
        Ok(Self {
            mat: self.mat.clone(),
            layout,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn layout(&self) -> &QubitLayout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn purity(&self) -> f64 {
        (&self.mat * &self.mat).trace().re
    }
}

/// Unitary within `1e-10` (Frobenius distance of `U†U` from the identity).
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryGate {
    mat: ComplexMatrix,
    layout: QubitLayout,
}

impl UnitaryGate {
    pub fn new(mat: ComplexMatrix, layout: QubitLayout) -> Result<Self> {
        if mat.dim() != layout.dim() {
            return Err(Error::DimensionMismatch {
                expected: layout.dim(),
                found: mat.dim(),
            });
        }
        let deviation = mat.unitarity_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { mat, layout })
    }

    pub fn identity(layout: QubitLayout) -> Self {
        Self {
            mat: ComplexMatrix::identity(layout.dim()),
            layout,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn layout(&self) -> &QubitLayout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    /// `other · self` (apply `self` first).
    pub fn then(&self, other: &UnitaryGate) -> Result<UnitaryGate> {
        if other.layout != self.layout {
            return Err(Error::InvalidLayout("composed gates must share a layout".into()));
        }
        Ok(Self {
            mat: &other.mat * &self.mat,
            layout: self.layout.clone(),
        })
    }

    pub fn adjoint(&self) -> UnitaryGate {
        Self {
            mat: self.mat.adjoint(),
            layout: self.layout.clone(),
        }
    }
}
