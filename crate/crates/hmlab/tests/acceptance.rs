//! The ten desk-scale acceptance criteria, printed one PASS/FAIL line each.

use hmlab::verify::run_desk_suite;

#[test]
fn acceptance_desk_suite() {
    let outcomes = run_desk_suite();
    assert_eq!(outcomes.len(), 10);
    let mut failures = Vec::new();
    for o in &outcomes {
        println!(
            "criterion {}: {} - {} ({})",
            o.id,
            if o.pass { "PASS" } else { "FAIL" },
            o.name,
            o.detail
        );
        if !o.pass {
            failures.push(o.id);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
