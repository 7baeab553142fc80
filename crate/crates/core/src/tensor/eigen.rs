// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

//! Hermitian eigendecomposition by cyclic complex Jacobi rotations, and the
//! spectral quantities built on it.

use num_complex::Complex64 as C64;

use super::matrix::{ComplexMatrix, HERMITIAN_TOL};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct HermitianSpectrum {
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the eigenvector for `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianSpectrum {
    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        let n = self.eigenvectors.dim();
        (0..n).map(|i| self.eigenvectors[(i, k)]).collect()
    }

    /// `Σ_k g(λ_k) v_k v_k†`.
    pub fn map_eigenvalues(&self, g: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.dim();
        let mut out = ComplexMatrix::zeros(n);
        for (k, &lam) in self.eigenvalues.iter().enumerate() {
            let w = g(lam);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vi = v[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] += vi * v[(j, k)].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_eigenvalues(|x| x)
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().expect("spectrum is never empty")
    }
}

/// Tolerance for accepting a matrix as Hermitian, scaled by its norm.
fn hermitian_tolerance(h: &ComplexMatrix) -> f64 {
    HERMITIAN_TOL * h.frobenius_norm().max(1.0)
}

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized first;
/// anything further than `1e-10` (relative to its norm, floored at 1) from
/// Hermitian is rejected.
pub fn eig_hermitian(h: &ComplexMatrix) -> Result<HermitianSpectrum> {
    let violation = h.hermiticity_violation();
    if violation > hermitian_tolerance(h) {
        return Err(Error::NotHermitian { violation });
    }
    Ok(jacobi(h.hermitian_part()))
}

pub fn eigenvalues_hermitian(h: &ComplexMatrix) -> Result<Vec<f64>> {
    eig_hermitian(h).map(|s| s.eigenvalues)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn jacobi(mut a: ComplexMatrix) -> HermitianSpectrum {
    let n = a.dim();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();

    if scale > 0.0 {
        for _ in 0..MAX_SWEEPS {
            if off_diagonal_norm(&a) <= 1e-15 * scale {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&x, &y| diag[x].total_cmp(&diag[y]));
    let mut vectors = ComplexMatrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, new_col)] = v[(i, old_col)];
        }
    }
    HermitianSpectrum {
        eigenvalues: order.iter().map(|&k| diag[k]).collect(),
        eigenvectors: vectors,
    }
}

/// Annihilates `a[p, q]` with a unitary `G = diag(1, e^{-iφ}) · R(θ)` on the
/// `(p, q)` plane, updating `a ← G† a G` and `v ← v G`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag < 1e-300 {
        return;
    }
    let n = a.dim();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = apq / mag;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let e_minus = phase.conj();

    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * c - akq * e_minus * s;
        a[(k, q)] = akp * s + akq * e_minus * c;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = apk * c - aqk * phase * s;
        a[(q, k)] = apk * s + aqk * phase * c;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * c - vkq * e_minus * s;
        v[(k, q)] = vkp * s + vkq * e_minus * c;
    }
}

/// Sum of singular values. Hermitian inputs use `Σ|λ_k|` directly; anything
/// else goes through the spectrum of `m m†`.
pub fn trace_norm(m: &ComplexMatrix) -> f64 {
    if m.is_hermitian(HERMITIAN_TOL) {
        let spec = jacobi(m.hermitian_part());
        return spec.eigenvalues.iter().map(|x| x.abs()).sum();
    }
    let gram = m * &m.adjoint();
    jacobi(gram.hermitian_part())
        .eigenvalues
        .iter()
        .map(|&x| x.max(0.0).sqrt())
        .sum()
}
