//! Acceptance criteria, one test per criterion. Each prints a single
//! `criterion N: PASS|FAIL ...` line before asserting.

use std::time::{Duration, Instant};

use sloshing::checks::{self, PropertyReport};
use sloshing::inverse::RecoveryOptions;

fn report(n: u32, parts: &[PropertyReport], elapsed: Duration, budget: Option<Duration>) -> bool {
    let in_time = budget.is_none_or(|b| elapsed <= b);
    let passed = parts.iter().all(|p| p.passed) && in_time;
    let details: Vec<String> = parts
        .iter()
        .map(|p| format!("{} [{}] {}", p.name, if p.passed { "pass" } else { "fail" }, p.detail))
        .collect();
    let timing = match budget {
        Some(b) => format!(" | {:.2}s of {:.0}s budget", elapsed.as_secs_f64(), b.as_secs_f64()),
        None => format!(" | {:.2}s", elapsed.as_secs_f64()),
    };
    println!("criterion {n}: {} | {}{timing}", if passed { "PASS" } else { "FAIL" }, details.join(" ; "));
    passed
}

fn timed<F: FnOnce() -> Vec<PropertyReport>>(f: F) -> (Vec<PropertyReport>, Duration) {
    let t = Instant::now();
    let r = f();
    (r, t.elapsed())
}

#[test]
fn criterion_01_quadratic_residuals() {
    let (r, t) = timed(|| vec![checks::quadratic_residuals()]);
    assert!(report(1, &r, t, Some(Duration::from_secs(10))));
}

#[test]
fn criterion_02_ordering_and_ranges() {
    let (r, t) = timed(|| vec![checks::ordering_and_ranges(), checks::interlacing_across_spectrum()]);
    assert!(report(2, &r, t, None));
}

#[test]
fn criterion_03_monotonicity_in_rho() {
    let (r, t) = timed(|| vec![checks::monotonicity_in_rho(7)]);
    assert!(report(3, &r, t, None));
}

#[test]
fn criterion_04_large_k_asymptotics() {
    let (r, t) = timed(|| vec![checks::large_k_asymptotics()]);
    assert!(report(4, &r, t, None));
}

#[test]
fn criterion_05_weyl_count() {
    let (r, t) = timed(|| vec![checks::weyl_count_square()]);
    assert!(report(5, &r, t, Some(Duration::from_secs(30))));
}

#[test]
fn criterion_06_variational_consistency() {
    let (r, t) = timed(|| vec![checks::rayleigh_on_eigenmodes(128), checks::rayleigh_trial_pair(128)]);
    assert!(report(6, &r, t, None));
}

#[test]
fn criterion_07_membrane_oracle() {
    let (r, t) = timed(|| vec![checks::membrane_oracle()]);
    assert!(report(7, &r, t, None));
}

#[test]
fn criterion_08_inverse_round_trip() {
    let opts = RecoveryOptions::default();
    let (r, t) = timed(|| vec![checks::inverse_round_trip(&opts, 7)]);
    assert!(report(8, &r, t, Some(Duration::from_secs(20))));
}

#[test]
fn criterion_09_solvability_diagnostics() {
    let opts = RecoveryOptions::default();
    let (r, t) = timed(|| vec![checks::solvability_diagnostics(&opts, 7)]);
    assert!(report(9, &r, t, None));
}

#[test]
fn criterion_10_infinite_depth() {
    let opts = RecoveryOptions::default();
    let (r, t) = timed(|| vec![checks::infinite_depth(&opts, 7)]);
    assert!(report(10, &r, t, None));
}

#[test]
fn criterion_11_derivative_checks() {
    let (r, t) = timed(|| vec![checks::derivative_checks(7)]);
    assert!(report(11, &r, t, None));
}
