use polyq_core::verify::default_samples;
use polyq_core::{verify_operad_axioms, verify_recurrence, verify_theorem};

#[test]
fn theorem_sweep_small() {
    let report = verify_theorem(4, 3);
    assert!(report.pass, "{:?}", report.first_failure());
    assert_eq!(report.scope.trees, 1 + 1 + 2 + 5);
    assert!(report.failures.is_empty());
}

#[test]
fn reports_are_reproducible() {
    let a = format!("{:?}", verify_theorem(4, 2));
    let b = format!("{:?}", verify_theorem(4, 2));
    assert_eq!(a, b);
}

#[test]
fn operad_axioms_hold_on_samples() {
    let report = verify_operad_axioms(&default_samples()[..3], 2);
    assert!(report.pass, "{:?}", report.first_failure());
}

#[test]
fn recurrence_agrees_up_to_ten() {
    let report = verify_recurrence(10);
    assert!(report.pass, "{:?}", report.first_failure());
}
