//! Acceptance suite: runs every reproduction criterion at its pinned
//! tolerance and prints one pass/fail line per criterion.
//!
//! Three criteria contain checks that are expected to fail because the
//! published values they target are internally inconsistent (see the
//! `reproduce` module docs): criterion 5 (the finite-q skew at
//! q = -1000), criterion 6 (the printed hybrid c4 = 38 against the
//! exhaustive count 31), and criterion 7 (edge-rule exponents quoted
//! from simulations). Those tests assert the criterion faithfully and
//! stay red on purpose; `expected_failure_inventory` pins exactly which
//! checks fail so any drift — in either direction — is caught.

use fraclab_core::reproduce::{self, CriterionResult};

fn report(result: &CriterionResult) {
    println!(
        "criterion {:>2} [{}] {}",
        result.id,
        if result.passed { "PASS" } else { "FAIL" },
        result.name
    );
    for line in &result.details {
        println!("    {line}");
    }
}

fn assert_criterion(result: CriterionResult) {
    report(&result);
    assert!(
        result.passed,
        "criterion {} ({}) failed:\n{}",
        result.id,
        result.name,
        result.details.join("\n")
    );
}

#[test]
fn criterion_01_analytic_dimension_table() {
    assert_criterion(reproduce::criterion_1());
}

#[test]
fn criterion_02_measure_identities() {
    assert_criterion(reproduce::criterion_2());
}

#[test]
fn criterion_03_cantor_function() {
    assert_criterion(reproduce::criterion_3());
}

#[test]
fn criterion_04_two_scale_multifractal() {
    assert_criterion(reproduce::criterion_4());
}

#[test]
fn criterion_05_triadic_closed_form() {
    // Contains one expected-red check: D(q = -1000) misses the printed
    // -infinity limit 1.262 by the q/(q-1) skew (true value 1.26060).
    assert_criterion(reproduce::criterion_5());
}

#[test]
fn criterion_06_rg_enumeration() {
    // Expected red at c4: exhaustive left-right enumeration yields 31;
    // the published 38 is unreachable by any monotone spanning rule.
    assert_criterion(reproduce::criterion_6());
}

#[test]
fn criterion_07_percolation_exponents() {
    // Hybrid family passes via the published polynomial; the edge-rule
    // checks are expected red (published values are simulation-derived,
    // the enumerated polynomial gives nu = 2.114, beta = 0.227).
    assert_criterion(reproduce::criterion_7());
}

#[test]
fn criterion_08_monte_carlo_consistency() {
    assert_criterion(reproduce::criterion_8());
}

#[test]
fn criterion_09_estimator_recovery() {
    assert_criterion(reproduce::criterion_9());
}

#[test]
fn criterion_10_geometry_cross_checks() {
    assert_criterion(reproduce::criterion_10());
}

/// Pins the exact shape of the three documented failures: each listed
/// criterion must fail on precisely the known checks and no others,
/// and every criterion not listed must pass. If an upstream fix or a
/// regression changes any of this, this test trips.
#[test]
fn expected_failure_inventory() {
    let results = reproduce::run_all(None);
    assert_eq!(results.len(), 10);
    for r in &results {
        report(r);
        let expected_red = reproduce::EXPECTED_RED.contains(&r.id);
        assert_eq!(
            !r.passed,
            expected_red,
            "criterion {} pass/fail state drifted from the documented expectation",
            r.id
        );
        assert!(
            reproduce::matches_expectation(r),
            "criterion {} failed on checks outside the documented set:\n{}",
            r.id,
            r.details.join("\n")
        );
    }
    let failing_checks: Vec<&String> = results
        .iter()
        .flat_map(|r| r.details.iter())
        .filter(|d| d.starts_with("FAIL"))
        .collect();
    // One skew check, one c4 check, two edge-exponent checks.
    assert_eq!(
        failing_checks.len(),
        4,
        "documented red checks changed: {failing_checks:#?}"
    );
}
