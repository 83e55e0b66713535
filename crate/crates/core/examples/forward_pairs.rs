//! The two eigenvalues attached to each membrane level, their interlacing
//! with the homogeneous value, and the approach to the large-k slopes.
//!
//! cargo run --example forward_pairs

use std::f64::consts::PI;

use sloshing::dispersion::{asymptotic_pair, quadratic_residual, two_layer_pair, ContainerGeometry, Stratification};
use sloshing::membrane::CrossSection;
use sloshing::Result;

fn main() -> Result<()> {
    let geom = ContainerGeometry::finite(CrossSection::rectangle(PI, PI)?, 1.0)?;
    for rho in [1.5, 3.0, 5.0] {
        let strat = Stratification::new(rho, 0.5)?;
        let (lm, lp) = asymptotic_pair(1.0, rho)?;
        println!("rho = {rho}: slopes nu-/k -> {lm}, nu+/k -> {lp}");
        println!("  {:>6} {:>14} {:>14} {:>14} {:>10}", "k", "nu-", "k tanh kd", "nu+", "residual");
        for k in [1.0, 2.0, 4.0, 8.0, 16.0, 32.0] {
            let p = two_layer_pair(k, &geom, &strat)?;
            let r = quadratic_residual(p.nu_minus, k, &geom, &strat)?
                .abs()
                .max(quadratic_residual(p.nu_plus, k, &geom, &strat)?.abs());
            println!(
                "  {k:>6} {:>14.10} {:>14.10} {:>14.10} {r:>10.1e}",
                p.nu_minus,
                p.nu_homogeneous(),
                p.nu_plus
            );
        }
    }
    Ok(())
}
