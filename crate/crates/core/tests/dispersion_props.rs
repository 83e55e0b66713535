use proptest::prelude::*;
use sloshing::dispersion::{pair_at_depth, residual_at_depth, Stratification};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn roots_interlace_homogeneous_value(kd in 0.05f64..50.0, hd in 0.02f64..0.98, t in 1e-3f64..40.0) {
        let s = Stratification::new(1.0 + t, hd).unwrap();
        let p = pair_at_depth(kd, 1.0, &s).unwrap();
        prop_assert!(0.0 < p.nu_minus);
        prop_assert!(p.plus_gap_scaled > 0.0 && p.minus_gap_scaled > 0.0 && p.interface_gap_scaled > 0.0);
        // Gaps agree with differences of the rounded roots.
        let w = kd * kd.tanh();
        prop_assert!((p.nu_plus - w - kd * p.plus_gap_scaled).abs() <= 16.0 * f64::EPSILON * p.nu_plus);
        prop_assert!((w - p.nu_minus - kd * p.minus_gap_scaled).abs() <= 16.0 * f64::EPSILON * w);
    }

    #[test]
    fn roots_satisfy_quadratic(kd in 0.05f64..300.0, hd in 0.02f64..0.98, t in 1e-3f64..40.0) {
        let s = Stratification::new(1.0 + t, hd).unwrap();
        let p = pair_at_depth(kd, 1.0, &s).unwrap();
        for nu in [p.nu_minus, p.nu_plus] {
            let x = nu / kd;
            let scale = x * x + x * p.b_scaled + p.nu_minus * p.nu_plus / (kd * kd);
            prop_assert!(residual_at_depth(nu, kd, 1.0, &s).unwrap().abs() <= 1e-12 * scale);
        }
    }

    /// `ν(s k, d/s, h/s) = s ν(k, d, h)`
    #[test]
    fn length_scaling(k in 0.1f64..10.0, hd in 0.05f64..0.95, rho in 1.01f64..20.0, scale in 0.1f64..10.0) {
        let a = pair_at_depth(k, 1.0, &Stratification::new(rho, hd).unwrap()).unwrap();
        let b = pair_at_depth(k * scale, 1.0 / scale, &Stratification::new(rho, hd / scale).unwrap()).unwrap();
        prop_assert!((b.nu_minus - scale * a.nu_minus).abs() <= 1e-11 * scale * a.nu_minus);
        prop_assert!((b.nu_plus - scale * a.nu_plus).abs() <= 1e-11 * scale * a.nu_plus);
    }

    #[test]
    fn increasing_in_rho(k in 0.1f64..10.0, hd in 0.05f64..0.95, rho in 1.01f64..20.0, step in 1e-3f64..5.0) {
        let a = pair_at_depth(k, 1.0, &Stratification::new(rho, hd).unwrap()).unwrap();
        let b = pair_at_depth(k, 1.0, &Stratification::new(rho + step, hd).unwrap()).unwrap();
        prop_assert!(b.nu_minus > a.nu_minus && b.nu_plus > a.nu_plus);
    }
}

#[test]
fn weak_stratification_limit() {
    let s = Stratification::new(1.0 + 1e-12, 0.5).unwrap();
    let p = pair_at_depth(1.0, 1.0, &s).unwrap();
    assert!(p.nu_minus > 0.0 && p.nu_minus < 1e-11);
    assert!((p.nu_plus - 1f64.tanh()).abs() < 1e-11);
}
