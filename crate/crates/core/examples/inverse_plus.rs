//! Recover (ρ, h) when the second measured eigenvalue is the plus partner
//! of the fundamental: the elevation lies in the span of the fundamental
//! modes and the closed-form system applies.
//!
//! cargo run --example inverse_plus

use std::f64::consts::PI;

use sloshing::dispersion::{ContainerGeometry, Stratification};
use sloshing::inverse::{recover, synthesize_measurement, RecoveryBranch, RecoveryOptions};
use sloshing::membrane::CrossSection;
use sloshing::Result;

fn main() -> Result<()> {
    let geom = ContainerGeometry::finite(CrossSection::rectangle(PI, PI)?, 1.0)?;
    let truth = Stratification::new(2.0, 0.3)?;
    let m = synthesize_measurement(&geom, &truth, Some(RecoveryBranch::PlusSystem), 24, 7)?;
    println!("nu_1 = {:.15}, nu_N = {:.15}", m.nu_1, m.nu_n);

    let r = recover(&m, &RecoveryOptions::default())?;
    let class = r.diagnostics.classification.as_ref().expect("classified");
    println!("elevation {:?}, residual {:.2e}", class.variant, class.projection_residual);
    println!("{:?}: rho = {:.15}, h = {:.15}", r.branch, r.rho, r.h);
    println!("rho formulas agree to {:.1e}, forward residual {:.1e}", r.diagnostics.rho_consistency, r.diagnostics.forward_residual);
    Ok(())
}
