//! Runs the ten acceptance criteria and prints one PASS/FAIL line each.
//! `cargo test --test acceptance -- --nocapture` shows the lines.

use std::time::Instant;

use tormod::verify::{run_criterion, SUITES};

#[test]
fn acceptance_criteria() {
    let mut failed = Vec::new();
    for criterion in 1..=SUITES.len() {
        let start = Instant::now();
        let report = run_criterion(criterion).unwrap_or_else(|e| panic!("criterion {criterion} errored: {e}"));
        println!("{report} [{:.1}s]", start.elapsed().as_secs_f64());
        if !report.passed() {
            failed.push(report.name);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
