// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

pub mod channels;
pub mod error;
pub mod expr;
pub mod extraction;
pub mod inference;
pub mod io;
pub mod pdm;
pub mod random;
pub mod scattering;
pub mod tensor;

pub use error::{Error, Result};
