//! One test per criterion in the verification registry, at the default
//! configuration (p = 3, denominators <= 8).  Each prints its own
//! pass/fail line so a full run reads as a report.

use dihedral::verify::{criteria, run_one, VerifyConfig};

fn check(id: usize) {
    let cfg = VerifyConfig::default();
    let list = criteria();
    let c = list.iter().find(|c| c.id == id).expect("known criterion id");
    let r = run_one(c, &cfg);
    println!(
        "{} {:>2} {:<36} {:>6} ms  {}",
        if r.passed { "pass" } else { "FAIL" },
        r.id,
        r.name,
        r.millis,
        r.detail,
    );
    assert!(r.passed, "criterion {} ({}) failed: {}", r.id, r.name, r.detail);
}

#[test]
fn criterion_01_eta_restriction_biquadratic() {
    check(1);
}

#[test]
fn criterion_02_eta_restriction_cyclic() {
    check(2);
}

#[test]
fn criterion_03_norm_triviality_conjugate_inverse() {
    check(3);
}

#[test]
fn criterion_04_cyclic_impossibility() {
    check(4);
}

#[test]
fn criterion_05_non_galois_reduction() {
    check(5);
}

#[test]
fn criterion_06_headline_equivalence() {
    check(6);
}

#[test]
fn criterion_07_traceless_gauss_calibration() {
    check(7);
}

#[test]
fn criterion_08_principal_series_equivalence() {
    check(8);
}

#[test]
fn criterion_09_cyclic_dual_generator() {
    check(9);
}

#[test]
fn criterion_10_central_character_law() {
    check(10);
}

#[test]
fn criterion_11_arithmetic_oracles() {
    check(11);
}

#[test]
fn criterion_12_existence_of_witnesses() {
    check(12);
}
