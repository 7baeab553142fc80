// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear algebra on multi-qubit tensor-product spaces.

pub mod eigen;
pub mod layout;
pub mod matrix;
pub mod pauli;

pub use eigen::{eig_hermitian, eigenvalues_hermitian, trace_norm, HermitianSpectrum};
pub use layout::{embed_operator, partial_trace, partial_transpose, permute_sites, QubitLayout};
pub use matrix::{kron, kron_all, ComplexMatrix, HERMITIAN_TOL, MAX_DIM};
pub use pauli::{pauli_matrix, sigma_x, sigma_y, sigma_z, PauliLetter, PauliString};
