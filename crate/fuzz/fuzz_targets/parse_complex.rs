#![no_main]

use libfuzzer_sys::fuzz_target;
use phsusy::config::{parse_amp_list, parse_complex};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(c) = parse_complex(text) {
        assert!(c.re.is_finite() && c.im.is_finite());
    }
    if let Ok(list) = parse_amp_list(text) {
        assert!(list.iter().all(|c| c.re.is_finite() && c.im.is_finite()));
    }
});
