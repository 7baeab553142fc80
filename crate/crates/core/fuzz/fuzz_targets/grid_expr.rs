// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

#![no_main]

use libfuzzer_sys::fuzz_target;
use qcausal_core::expr::{parse_grid, parse_real};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let _ = parse_real(s);
    if let Ok(grid) = parse_grid(s) {
        assert!(!grid.is_empty());
    }
});
