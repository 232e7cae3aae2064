#![no_main]

use libfuzzer_sys::fuzz_target;

// Arguments are NUL-separated. Only cheap subcommands are let through so a
// single input cannot run a long sweep.
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let args: Vec<&str> = s.split('\0').collect();
    let cheap = matches!(args.first(), Some(&("gen" | "roots" | "limits" | "sokal")));
    let bounded = args.iter().all(|a| a.len() < 64 && a.parse::<u64>().map_or(true, |v| v <= 40));
    if !cheap || !bounded || args.iter().any(|a| *a == "--output" || *a == "-o") {
        return;
    }
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = fourterm::cli::run(
        std::iter::once("fourterm").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    assert!(matches!(code, 0..=3));
});
