//! One line per acceptance criterion; exits nonzero if any fails.
//! Set G2KIT_DEEP=1 for the FULL e₈ Jacobi check.

use g2kit::suite::{run_criterion, SuiteOptions};

fn main() {
    let deep = std::env::var("G2KIT_DEEP").is_ok_and(|v| v == "1");
    let opts = SuiteOptions { seed: 0, deep };
    let mut failed = 0;
    for id in 1..=16 {
        let r = run_criterion(id, opts);
        if !r.passed {
            failed += 1;
        }
        println!(
            "{:>2} {} {:<32} {:>7.2}s  {}",
            r.id,
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.seconds,
            r.detail
        );
    }
    println!("{} of 16 criteria passed", 16 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
