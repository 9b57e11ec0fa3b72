#![no_main]

use cuckoo_core::harness::{parse_pairs, ExperimentSpec};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = parse_pairs(text);
    // Anything accepted must survive an echo round trip.
    if let Ok(spec) = ExperimentSpec::from_config_str(text) {
        let echo = spec.to_config_string();
        let again = ExperimentSpec::from_config_str(&echo).expect("echo parses");
        assert_eq!(spec, again);
    }
});
