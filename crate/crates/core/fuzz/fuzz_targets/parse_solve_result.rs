#![no_main]

use libfuzzer_sys::fuzz_target;
use rainbow_matching::solvers::SolveResult;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = SolveResult::from_json(text) {
        let _ = SolveResult::from_json(&r.to_json());
    }
});
