use std::io::Write;

use phi_torsion::verify::{criteria, run_criterion};

// Written straight to stdout so the lines survive the test harness's capture.
#[test]
fn acceptance() {
    let mut failed = Vec::new();
    let mut out = std::io::stdout().lock();
    writeln!(out).unwrap();
    for c in criteria() {
        let r = run_criterion(&c);
        writeln!(out, "{}", r.line()).unwrap();
        if !r.passed {
            failed.push(r.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
