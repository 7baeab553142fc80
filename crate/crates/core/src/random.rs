// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

//! Seeded random matrices, states and channels for property tests and
//! randomized acceptance runs.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::tensor::ComplexMatrix;

pub type TestRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn ginibre(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let data = (0..dim * dim).map(|_| gaussian(rng)).collect();
    ComplexMatrix::from_vec(dim, data).expect("square by construction")
}

pub fn random_hermitian(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    ginibre(rng, dim).hermitian_part()
}

/// Haar-like unitary from Gram–Schmidt on a Ginibre matrix's columns.
pub fn random_unitary(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let g = ginibre(rng, dim);
    let mut q = ComplexMatrix::zeros(dim);
    for col in 0..dim {
        let mut v: Vec<C64> = (0..dim).map(|i| g[(i, col)]).collect();
        for prev in 0..col {
            let proj: C64 = (0..dim).map(|i| q[(i, prev)].conj() * v[i]).sum();
            for (i, vi) in v.iter_mut().enumerate() {
                *vi -= proj * q[(i, prev)];
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for (i, vi) in v.iter().enumerate() {
            q[(i, col)] = vi / norm;
        }
    }
    q
}

/// Density matrix `G G† / Tr(G G†)` with `G` a `dim × rank` Ginibre block.
pub fn random_density_of_rank(rng: &mut impl Rng, dim: usize, rank: usize) -> ComplexMatrix {
    let mut g = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..rank.min(dim) {
            g[(i, j)] = gaussian(rng);
        }
    }
    let rho = &g * &g.adjoint();
    let tr = rho.trace().re;
    rho.scale_real(1.0 / tr).hermitian_part()
}

pub fn random_density(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    random_density_of_rank(rng, dim, dim)
}

pub fn random_pure_state(rng: &mut impl Rng, dim: usize) -> Vec<C64> {
    let v: Vec<C64> = (0..dim).map(|_| gaussian(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// Kraus set `{K_k}` obtained by slicing a random isometry `C^d → C^{d·r}`.
pub fn random_kraus(rng: &mut impl Rng, dim: usize, rank: usize) -> Vec<ComplexMatrix> {
    let big = random_unitary(rng, dim * rank);
    (0..rank)
        .map(|k| {
            let mut m = ComplexMatrix::zeros(dim);
            for i in 0..dim {
                for j in 0..dim {
                    m[(i, j)] = big[(k * dim + i, j)];
                }
            }
            m
        })
        .collect()
}
