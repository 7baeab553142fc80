// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

#![no_main]

use libfuzzer_sys::fuzz_target;
use qcausal_core::scattering::{simulate_scattering, ScatteringDocument};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(doc) = ScatteringDocument::from_json_str(s) else { return };
    if let Ok(spec) = doc.to_spec() {
        let r = simulate_scattering(&spec);
        assert!(r.expectation.is_finite());
    }
});
