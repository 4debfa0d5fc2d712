//! Release criteria, one test per criterion. Run with
//! `cargo test --test acceptance -- --nocapture --test-threads=1` to see the
//! PASS/FAIL lines.

use cyalg::problem::catalog_cases;
use cyalg::selftest::{self, CriterionResult};

fn report(result: CriterionResult) {
    println!("{}", result.line());
    assert!(result.passed, "{}", result.line());
}

#[test]
fn criterion_01_cy_routes_agree() {
    report(selftest::criterion_1());
}

#[test]
fn criterion_02_sextuples() {
    report(selftest::criterion_2());
}

#[test]
fn criterion_03_classification() {
    report(selftest::criterion_3(&catalog_cases()));
}

#[test]
fn criterion_04_betti_numbers() {
    report(selftest::criterion_4());
}

#[test]
fn criterion_05_sridharan_catalog() {
    report(selftest::criterion_5(&catalog_cases()));
}

#[test]
fn criterion_06_potentials() {
    report(selftest::criterion_6(&catalog_cases()));
}

#[test]
fn criterion_07_skew_group_algebras() {
    report(selftest::criterion_7());
}

#[test]
fn criterion_08_cyclic_invariant() {
    report(selftest::criterion_8());
}

#[test]
fn criterion_09_rewriting() {
    report(selftest::criterion_9(&catalog_cases()));
}

#[test]
fn criterion_10_selftest_budget() {
    let full = selftest::run_selftest(&catalog_cases());
    assert_eq!(full.items.len(), 10);
    for item in &full.items[..9] {
        println!("  selftest {}", item.line());
    }
    report(full.items[9].clone());
}
