//! One test per acceptance criterion, each printing a single pass/fail line.

use std::io::Write;

use taut_core::presentation::Flags;
use taut_core::verify::run_check;

fn criterion(id: u8) {
    let r = run_check(id, Flags::default());
    let status = if r.passed { "PASS" } else { "FAIL" };
    // Written to the raw handle so the line shows even when the harness captures output.
    let _ = writeln!(std::io::stderr(), "criterion {:>2} {status} [{} ms] {}: {}", r.id, r.millis, r.name, r.detail);
    assert!(r.passed, "criterion {id} failed: {}", r.detail);
}

macro_rules! criteria {
    ($($name:ident = $id:expr),* $(,)?) => {
        $(#[test] fn $name() { criterion($id) })*
    };
}

criteria! {
    c01_grassmannian = 1,
    c02_p1_conics = 2,
    c03_duality = 3,
    c04_v2_gate = 4,
    c05_d3_cross_presentation = 5,
    c06_lines_in_p3 = 6,
    c07_conics_in_p3 = 7,
    c08_validate = 8,
    c09_order_invariance = 9,
    c10_lemma34 = 10,
}
