// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

#![no_main]

use libfuzzer_sys::fuzz_target;
use qcausal_core::channels::Gate;
use qcausal_core::tensor::QubitLayout;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(g) = s.parse::<Gate>() {
        let register = QubitLayout::qubits(&["A", "B", "C", "E"]).expect("valid labels");
        let _ = g.unitary(&register);
    }
});
