use std::f64::consts::PI;

use proptest::prelude::*;
use sloshing::dispersion::{ContainerGeometry, Stratification};
use sloshing::inverse::{
    recover, solve_minus_system, synthesize_measurement, u_value, Measurement, RecoveryBranch, RecoveryOptions,
};
use sloshing::membrane::CrossSection;
use sloshing::Error;

fn square(d: f64) -> ContainerGeometry {
    ContainerGeometry::finite(CrossSection::rectangle(PI, PI).unwrap(), d).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn plus_data_recovered(rho in 1.02f64..8.0, hd in 0.05f64..0.95, d in 0.5f64..2.0, seed in 0u64..1000) {
        let m = synthesize_measurement(&square(d), &Stratification::new(rho, hd * d).unwrap(), Some(RecoveryBranch::PlusSystem), 16, seed).unwrap();
        let r = recover(&m, &RecoveryOptions::default()).unwrap();
        prop_assert!((r.rho - rho).abs() <= 1e-8 * rho);
        prop_assert!((r.h - hd * d).abs() <= 1e-8 * hd * d);
    }

    /// The true parameters are always among the minus-system roots, and a
    /// unique answer is the true one.
    #[test]
    fn minus_truth_among_candidates(rho in 1.05f64..6.0, hd in 0.1f64..0.9) {
        let m = synthesize_measurement(&square(1.0), &Stratification::new(rho, hd).unwrap(), Some(RecoveryBranch::MinusSystem), 16, 3).unwrap();
        prop_assert!(u_value(hd, &m).unwrap().abs() < 1e-11);
        let cands = match solve_minus_system(&m, &RecoveryOptions::default()) {
            Ok(r) => {
                prop_assert!((r.rho - rho).abs() <= 1e-8 * rho && (r.h - hd).abs() <= 1e-8 * hd);
                r.candidates
            }
            Err(Error::MultipleRoots { candidates, .. }) => candidates,
            Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
        };
        prop_assert!(cands.iter().any(|c| (c.rho - rho).abs() <= 1e-8 * rho && (c.h - hd).abs() <= 1e-8 * hd));
    }
}

#[test]
fn disc_container_round_trip() {
    let g = ContainerGeometry::finite(CrossSection::disc(1.0).unwrap(), 1.0).unwrap();
    let m = synthesize_measurement(&g, &Stratification::new(2.5, 0.35).unwrap(), Some(RecoveryBranch::PlusSystem), 20, 11).unwrap();
    let r = recover(&m, &RecoveryOptions::default()).unwrap();
    assert_eq!(r.branch, RecoveryBranch::PlusSystem);
    assert!((r.rho - 2.5).abs() < 1e-9 && (r.h - 0.35).abs() < 1e-9);
}

#[test]
fn measurement_document_round_trips() {
    let m = synthesize_measurement(&square(1.0), &Stratification::new(2.0, 0.3).unwrap(), None, 12, 5).unwrap();
    let text = sloshing::export::to_json_17(&m).unwrap();
    let back: Measurement = serde_json::from_str(&text).unwrap();
    assert_eq!(back, m);
}

#[test]
fn homogeneous_measurement() {
    let g = square(1.0);
    let m = synthesize_measurement(&g, &Stratification::new(2.0, 0.3).unwrap(), None, 12, 5).unwrap();
    let w1 = 1f64.tanh();
    let m = Measurement::new(w1, 1.1, g, m.elevation).unwrap();
    let r = recover(&m, &RecoveryOptions::default()).unwrap();
    assert_eq!(r.branch, RecoveryBranch::Homogeneous);
    assert_eq!((r.rho, r.h), (1.0, 1.0));
}

#[test]
fn too_few_samples_is_rank_deficient() {
    let m = synthesize_measurement(&square(1.0), &Stratification::new(2.0, 0.3).unwrap(), None, 3, 5).unwrap();
    assert!(matches!(recover(&m, &RecoveryOptions::default()), Err(Error::RankDeficient(_))));
}
