// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

//! Least-negative CJ matrix by ADMM.
//!
//! Minimizes `h(M) = Σ max(0, −λ_k(M^{T_in}))` over Hermitian `M` subject to
//! `½{ρ ⊗ 𝟙, M} = R` and `Tr_out M = 𝟙`.
//!
//! In the eigenbasis of `ρ ⊗ 𝟙`, with `ρ` eigenvalues `a_i`, the first
//! constraint acts blockwise: the `d_out × d_out` block `(i, j)` of `M̃` is
//! `2 R̃_ij / (a_i + a_j)` whenever `a_i + a_j ≠ 0`, and unconstrained
//! otherwise (where `R̃_ij` must vanish). The trace constraint only fixes the
//! trace of each free block, so the Frobenius projection onto the affine set
//! is closed form.
//!
//! Splitting `M = Z` with `M` in the affine set and `Z` free:
//! ```text
//! M ← Π(Z − U)                      projection onto the affine set
//! Z ← prox_{h/ρ}(M + U)             eigenvalue-wise on the Choi matrix
//! U ← U + M − Z
//! ```
//! The returned iterate is `M`, which satisfies the equality constraints to
//! machine precision at every step.

use num_complex::Complex64 as C64;

use super::SdpConfig;
use crate::error::{Error, Result};
use crate::tensor::{eig_hermitian, kron, ComplexMatrix};

/// Largest CJ dimension handled by the SDP (two qubits per time).
pub const MAX_SDP_DIM: usize = 16;

/// Constraint residual of the projected origin above which the constraints
/// are declared inconsistent.
pub const FEASIBILITY_TOL: f64 = 1e-8;

/// Relative size of `|a_i + a_j|` below which a block is treated as free.
const FREE_BLOCK_CUTOFF: f64 = 1e-12;

fn partial_trace_out(m: &ComplexMatrix, din: usize, dout: usize) -> ComplexMatrix {
    let mut t = ComplexMatrix::zeros(din);
    for i in 0..din {
        for j in 0..din {
            for a in 0..dout {
                t[(i, j)] += m[(i * dout + a, j * dout + a)];
            }
        }
    }
    t
}

/// `C[(i, a), (j, b)] = M[(j, a), (i, b)]`.
pub(crate) fn transpose_input(m: &ComplexMatrix, din: usize, dout: usize) -> ComplexMatrix {
    let mut c = ComplexMatrix::zeros(m.dim());
    for i in 0..din {
        for j in 0..din {
            for a in 0..dout {
                for b in 0..dout {
                    c[(i * dout + a, j * dout + b)] = m[(j * dout + a, i * dout + b)];
                }
            }
        }
    }
    c
}

/// `{M : ½{ρ ⊗ 𝟙, M} = R, Tr_out M = 𝟙}` for a given `(R, ρ)`.
pub(crate) struct AffineSet {
    din: usize,
    dout: usize,
    r: ComplexMatrix,
    marginal: ComplexMatrix,
    /// `V ⊗ 𝟙` with `V` the eigenvectors of `ρ`.
    frame: ComplexMatrix,
    /// Rotated blocks fixed by the data; free blocks are zero.
    fixed: ComplexMatrix,
    /// Row-major `din × din` flags of unconstrained blocks.
    free: Vec<bool>,
    /// Real dimension of the set.
    pub(crate) nullity: usize,
}

impl AffineSet {
    pub(crate) fn new(r: &ComplexMatrix, rho: &ComplexMatrix) -> Result<Self> {
        let din = rho.dim();
        let d = r.dim();
        if din == 0 || !d.is_multiple_of(din) {
            return Err(Error::DimensionMismatch {
                expected: din,
                found: d,
            });
        }
        if d > MAX_SDP_DIM {
            return Err(Error::InvalidArgument(format!(
                "SDP supports CJ dimension up to {MAX_SDP_DIM}, got {d}"
            )));
        }
        let dout = d / din;
        let spec = eig_hermitian(rho)?;
        let a = &spec.eigenvalues;
        let scale = a.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        let frame = kron(&spec.eigenvectors, &ComplexMatrix::identity(dout));
        let rt = &(&frame.adjoint() * r) * &frame;
        let mut fixed = ComplexMatrix::zeros(d);
        let mut free = vec![false; din * din];
        let mut nullity = 0;
        for i in 0..din {
            for j in 0..din {
                let den = a[i] + a[j];
                if den.abs() <= FREE_BLOCK_CUTOFF * scale {
                    free[i * din + j] = true;
                    if i <= j {
                        nullity += if i == j { dout * dout - 1 } else { 2 * dout * dout - 2 };
                    }
                    continue;
                }
                for x in 0..dout {
                    for y in 0..dout {
                        let (k, l) = (i * dout + x, j * dout + y);
                        fixed[(k, l)] = rt[(k, l)] * (2.0 / den);
                    }
                }
            }
        }
        Ok(Self {
            din,
            dout,
            r: r.clone(),
            marginal: rho.clone(),
            frame,
            fixed,
            free,
            nullity,
        })
    }

    /// Nearest point of the set in Frobenius norm; fixed blocks are copied
    /// and each free block is shifted by a multiple of `𝟙` to meet its trace.
    pub(crate) fn project(&self, y: &ComplexMatrix) -> ComplexMatrix {
        let (din, dout) = (self.din, self.dout);
        let mut out = self.fixed.clone();
        let yt = &(&self.frame.adjoint() * y) * &self.frame;
        for i in 0..din {
            for j in 0..din {
                if !self.free[i * din + j] {
                    continue;
                }
                let mut tr = C64::new(0.0, 0.0);
                for x in 0..dout {
                    tr += yt[(i * dout + x, j * dout + x)];
                }
                let target = if i == j { 1.0 } else { 0.0 };
                let shift = (tr - target) / dout as f64;
                for x in 0..dout {
                    for z in 0..dout {
                        let (k, l) = (i * dout + x, j * dout + z);
                        out[(k, l)] = yt[(k, l)] - if x == z { shift } else { C64::new(0.0, 0.0) };
                    }
                }
            }
        }
        self.frame.conjugate(&out).hermitian_part()
    }

    /// `(‖½{ρ⊗𝟙, M} − R‖_F, ‖Tr_out M − 𝟙‖_F)`.
    pub(crate) fn residuals(&self, m: &ComplexMatrix) -> (f64, f64) {
        let p = kron(&self.marginal, &ComplexMatrix::identity(self.dout));
        let c = ComplexMatrix::anticommutator(&p, m).scale_real(0.5).distance(&self.r);
        let t = partial_trace_out(m, self.din, self.dout).distance(&ComplexMatrix::identity(self.din));
        (c, t)
    }

    pub(crate) fn residual(&self, m: &ComplexMatrix) -> f64 {
        let (c, t) = self.residuals(m);
        c.hypot(t)
    }
}

#[derive(Debug, Clone)]
pub struct SdpOutcome {
    pub m: ComplexMatrix,
    pub objective: f64,
    pub iterations: usize,
    /// Dimension of the affine solution set; zero means the constraints
    /// alone pin down `M`.
    pub nullity: usize,
    pub primal_residual: f64,
    pub dual_residual: f64,
    /// `‖½{ρ⊗𝟙, M} − R‖_F`.
    pub constraint_residual: f64,
    /// `‖Tr_out M − 𝟙‖_F`.
    pub trace_residual: f64,
}

fn negative_part_sum(c: &ComplexMatrix) -> Result<f64> {
    Ok(eig_hermitian(c)?.eigenvalues.iter().map(|&l| (-l).max(0.0)).sum())
}

pub fn sdp_solve_matrix(r: &ComplexMatrix, rho: &ComplexMatrix, cfg: &SdpConfig) -> Result<SdpOutcome> {
    cfg.validate()?;
    let set = AffineSet::new(r, rho)?;
    let (din, dout) = (set.din, set.dout);
    let d = din * dout;
    let x0 = set.project(&ComplexMatrix::zeros(d));
    let residual = set.residual(&x0);
    if residual > FEASIBILITY_TOL {
        return Err(Error::SdpInfeasible { residual });
    }

    let step = 1.0 / cfg.penalty;
    let prox = |v: &ComplexMatrix| -> Result<ComplexMatrix> {
        let spec = eig_hermitian(&transpose_input(v, din, dout))?;
        let shrunk = spec.map_eigenvalues(|l| {
            if l >= 0.0 {
                l
            } else if l <= -step {
                l + step
            } else {
                0.0
            }
        });
        Ok(transpose_input(&shrunk, din, dout))
    };

    let mut z = x0;
    let mut u = ComplexMatrix::zeros(d);
    let (mut primal, mut dual) = (f64::INFINITY, f64::INFINITY);
    for it in 1..=cfg.max_iterations {
        let m = set.project(&(&z - &u));
        let z_next = prox(&(&m + &u))?;
        dual = cfg.penalty * z_next.distance(&z);
        z = z_next;
        let gap = &m - &z;
        primal = gap.frobenius_norm();
        u = &u + &gap;
        if primal < cfg.primal_tol && dual < cfg.dual_tol {
            let objective = negative_part_sum(&transpose_input(&m, din, dout))?;
            let (constraint_residual, trace_residual) = set.residuals(&m);
            return Ok(SdpOutcome {
                m,
                objective,
                iterations: it,
                nullity: set.nullity,
                primal_residual: primal,
                dual_residual: dual,
                constraint_residual,
                trace_residual,
            });
        }
    }
    Err(Error::SdpNotConverged {
        iterations: cfg.max_iterations,
        primal_residual: primal,
        dual_residual: dual,
    })
}
