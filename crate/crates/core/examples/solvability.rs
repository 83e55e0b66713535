//! Necessary conditions for a unique interface depth, and the sign of U
//! across the depth for data inside and outside them.
//!
//! cargo run --example solvability

use std::f64::consts::PI;

use sloshing::dispersion::{ContainerGeometry, Stratification};
use sloshing::inverse::{
    necessary_conditions, solve_minus_system, synthesize_measurement, u_value, Measurement, RecoveryBranch,
    RecoveryOptions,
};
use sloshing::membrane::CrossSection;
use sloshing::Result;

fn report(label: &str, m: &Measurement) -> Result<()> {
    let nc = necessary_conditions(m)?;
    let d = m.geometry.finite_depth()?;
    let signs: String = (0..=20)
        .map(|i| {
            let u = u_value(d * i as f64 / 20.0, m).unwrap_or(f64::NAN);
            if u > 0.0 { '+' } else if u < 0.0 { '-' } else { '0' }
        })
        .collect();
    let outcome = match solve_minus_system(m, &RecoveryOptions::default()) {
        Ok(r) => format!("unique h = {:.6}", r.h),
        Err(e) => e.kind().to_string(),
    };
    println!("{label}\n  verdict {:?}, U(0) = {:.3e}\n  sign of U on [0, d]: {signs}\n  solver: {outcome}", nc.verdict, nc.u_at_0);
    Ok(())
}

fn main() -> Result<()> {
    let geom = ContainerGeometry::finite(CrossSection::rectangle(PI, PI)?, 1.0)?;
    let m = synthesize_measurement(&geom, &Stratification::new(5.0, 0.7)?, Some(RecoveryBranch::MinusSystem), 24, 7)?;
    report("forward data rho = 5, h = 0.7", &m)?;

    // nu_N k1/kN >= nu_1 kN/k1: no root or several
    let degenerate = Measurement::new(0.3, 0.3 * 2.0 * 1.2, geom.clone(), m.elevation.clone())?;
    report("nu_N = 2.4 nu_1 (outside the first inequality)", &degenerate)?;

    let w1 = 1f64.tanh();
    let wn = 2f64.sqrt() * 2f64.sqrt().tanh();
    let nu1 = 0.5;
    let degenerate = Measurement::new(nu1, nu1 * wn / w1, geom, m.elevation)?;
    report("nu_N^W nu_1 = nu_N nu_1^W", &degenerate)?;
    Ok(())
}
