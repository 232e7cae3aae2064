//! Replays the checked-in fuzz seeds through the same checks the fuzz
//! targets make, so they run on stable with the ordinary test suite.

use std::fs;
use std::path::PathBuf;

use fourterm::cli::{format_rational, parse_coefficients, parse_complex, parse_rational, run};

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, fs::read(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn rational_seeds() {
    let mut accepted = 0;
    for (_, data) in seeds("parse_rational") {
        let Ok(s) = std::str::from_utf8(&data) else {
            continue;
        };
        for decimal in [false, true] {
            if let Ok(r) = parse_rational(s, decimal) {
                accepted += 1;
                assert_eq!(parse_rational(&format_rational(&r), false).unwrap(), r);
            }
        }
    }
    assert!(accepted > 0);
}

#[test]
fn coefficient_seeds() {
    for (name, data) in seeds("parse_coefficients") {
        let s = std::str::from_utf8(&data).unwrap();
        match parse_coefficients(s, true) {
            Ok(c) => assert_eq!(c.len(), s.split(',').count(), "{name}"),
            Err(_) => assert_eq!(name, "empty_entry"),
        }
    }
}

#[test]
fn complex_seeds() {
    for (name, data) in seeds("parse_complex") {
        let s = std::str::from_utf8(&data).unwrap();
        let ok = parse_complex(s).is_ok();
        assert_eq!(ok, !matches!(name.as_str(), "inf" | "three"), "{name}");
    }
}

#[test]
fn cli_seeds() {
    for (name, data) in seeds("cli_args") {
        let s = std::str::from_utf8(&data).unwrap();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("fourterm").chain(s.split('\0')),
            &mut out,
            &mut err,
        );
        let expect = if name == "bad_b" { 2 } else { 0 };
        assert_eq!(code, expect, "{name}: {}", String::from_utf8_lossy(&err));
    }
}
