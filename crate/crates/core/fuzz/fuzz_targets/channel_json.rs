// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

#![no_main]

use libfuzzer_sys::fuzz_target;
use qcausal_core::channels::ChannelCJ;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(c) = ChannelCJ::from_json_str(s) {
        let back = ChannelCJ::from_json_str(&c.to_json_string()).expect("serialized channel parses");
        assert_eq!(back, c);
    }
});
