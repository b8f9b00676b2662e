#![no_main]

use libfuzzer_sys::fuzz_target;
use rainbow_matching::io::{parse_rainbow, write_rainbow};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(rm) = parse_rainbow(text) {
        assert_eq!(parse_rainbow(&write_rainbow(&rm)).expect("written matching parses"), rm);
    }
});
