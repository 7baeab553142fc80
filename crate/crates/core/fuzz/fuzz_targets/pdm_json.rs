// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

#![no_main]

use libfuzzer_sys::fuzz_target;
use qcausal_core::pdm::{negativity, time_reverse, Pdm};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(r) = Pdm::from_json_str(s) {
        let back = Pdm::from_json_str(&r.to_json_string()).expect("serialized PDM parses");
        assert_eq!(back, r);
        assert_eq!(time_reverse(&time_reverse(&r)), r);
        let _ = negativity(r.matrix());
    }
});
