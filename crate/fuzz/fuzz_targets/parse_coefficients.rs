#![no_main]

use fourterm::cli::parse_coefficients;
use fourterm::poly::ExactPoly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(c) = parse_coefficients(s, true) {
        assert_eq!(c.len(), s.split(',').count());
        let p = ExactPoly::new(c);
        let _ = p.degree();
    }
});
