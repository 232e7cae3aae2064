#![no_main]

use fourterm::cli::{format_rational, parse_rational};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    for decimal in [false, true] {
        if let Ok(r) = parse_rational(s, decimal) {
            // Printed values must read back to the same number.
            assert_eq!(parse_rational(&format_rational(&r), false).unwrap(), r);
        }
    }
});
