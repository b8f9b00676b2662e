#![no_main]

use libfuzzer_sys::fuzz_target;
use rainbow_matching::io::{parse_instance, write_instance};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(inst) = parse_instance(text) {
        assert!(inst.validate().is_empty());
        let canonical = write_instance(&inst);
        let back = parse_instance(&canonical).expect("canonical text parses");
        assert_eq!(back, inst);
        assert_eq!(write_instance(&back), canonical);
    }
});
