// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

#![no_main]

use libfuzzer_sys::fuzz_target;
use qcausal_core::pdm::{pdm_from_correlators, CorrelatorTable};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(t) = CorrelatorTable::from_json_str(s) {
        let back = CorrelatorTable::from_json_str(&t.to_json_string()).expect("serialized table parses");
        assert_eq!(back, t);
        let _ = pdm_from_correlators(&t);
    }
});
