#![no_main]

use libfuzzer_sys::fuzz_target;
use rainbow_matching::generators::LatinSquare;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(parsed) = LatinSquare::parse(text) {
        let again = LatinSquare::parse(&parsed.square.to_text()).expect("printed square parses");
        assert_eq!(again.square, parsed.square);
    }
});
