// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

#![no_main]

use libfuzzer_sys::fuzz_target;
use qcausal_core::channels::DensityMatrix;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let _ = DensityMatrix::from_spec(s, "A");
});
