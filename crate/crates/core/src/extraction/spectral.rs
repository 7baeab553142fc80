// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact inversion of `R = ½{ρ ⊗ 𝟙, M}` for full-rank `ρ`.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::tensor::{eig_hermitian, kron, ComplexMatrix};

/// Smallest admissible `a_k + a_l` before the solve is refused.
pub const MIN_DENOMINATOR: f64 = 1e-12;

/// Solves `½{ρ ⊗ 𝟙_out, M} = R` for `M`. In the eigenbasis of `ρ ⊗ 𝟙` with
/// eigenvalues `a_k`, the solution is `M̃_kl = 2 R̃_kl / (a_k + a_l)`.
pub fn spectral_solve_matrix(r: &ComplexMatrix, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let din = rho.dim();
    if din == 0 || !r.dim().is_multiple_of(din) {
        return Err(Error::DimensionMismatch {
            expected: din,
            found: r.dim(),
        });
    }
    let dout = r.dim() / din;
    let spec = eig_hermitian(rho)?;
    let a = &spec.eigenvalues;
    let min_denominator = 2.0 * a[0];
    if min_denominator < MIN_DENOMINATOR {
        return Err(Error::RankDeficient { min_denominator });
    }
    let v = kron(&spec.eigenvectors, &ComplexMatrix::identity(dout));
    let mut rt = &(&v.adjoint() * r) * &v;
    let n = rt.dim();
    for k in 0..n {
        for l in 0..n {
            let den = a[k / dout] + a[l / dout];
            rt[(k, l)] *= C64::new(2.0 / den, 0.0);
        }
    }
    Ok(v.conjugate(&rt).hermitian_part())
}
