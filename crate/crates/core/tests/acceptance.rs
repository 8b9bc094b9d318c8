//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints its PASS/FAIL line; exits non-zero if any fails.
//! Tolerances and runtime budgets live in `heller_core::verify`.

use heller_core::verify::run_check;
use std::process::ExitCode;

const CRITERIA: [(u32, &str); 7] = [
    (1, "table1"),
    (2, "table2"),
    (3, "oracle-equivalence"),
    (4, "chebyshev-closed-form"),
    (5, "green-equivalence"),
    (6, "properties"),
    (7, "accuracy-ordering"),
];

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for (number, check) in CRITERIA {
        let outcomes = run_check(check).expect("registered check");
        let passed = outcomes.iter().all(|o| o.passed);
        println!(
            "criterion {number} ({check}): {}",
            if passed { "PASS" } else { "FAIL" }
        );
        for o in &outcomes {
            println!("    {o}");
        }
        if !passed {
            failed.push(number);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 7 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: criteria {failed:?} failed");
        ExitCode::FAILURE
    }
}
