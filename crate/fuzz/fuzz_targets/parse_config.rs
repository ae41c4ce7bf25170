#![no_main]

use libfuzzer_sys::fuzz_target;
use phsusy::config::RunConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(cfg) = RunConfig::parse(text) else {
        return;
    };
    // Accepted configs must survive validation without panicking.
    let _ = cfg.validate(None);
    for (key, value) in text.lines().filter_map(|l| l.split_once('=')) {
        let mut copy = cfg.clone();
        let _ = copy.set(key.trim(), value.trim());
    }
});
