#![no_main]

use cuckoo_core::harness::read_results_jsonl;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let _ = read_results_jsonl(data);
});
