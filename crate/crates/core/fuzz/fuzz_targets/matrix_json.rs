// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

#![no_main]

use libfuzzer_sys::fuzz_target;
use qcausal_core::io::{matrix_from_json, matrix_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(m) = matrix_from_json(s) {
        // Shortest round-trip floats make re-serialization exact.
        let back = matrix_from_json(&matrix_to_json(&m)).expect("serialized matrix parses");
        assert_eq!(back, m);
    }
});
