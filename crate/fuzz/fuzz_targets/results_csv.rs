#![no_main]

use cuckoo_core::harness::read_results_csv;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(file) = read_results_csv(data) {
        let _ = file.summaries();
    }
});
