//! Rayleigh quotients of the constructed modes, of a homogeneous trial pair,
//! and a vertical profile for plotting.
//!
//! The quotient is stationary for a different interface condition than the
//! one built into the dispersion quadratic, so on the constructed
//! eigenmodes it does not return `ν`; the gap is printed rather than hidden.
//!
//! cargo run --example rayleigh_check

use std::f64::consts::PI;

use sloshing::dispersion::{two_layer_pair, ContainerGeometry, Stratification};
use sloshing::membrane::{CrossSection, ModeId};
use sloshing::modes::{coefficients, rayleigh_two_layer, vertical_profile, PotentialPair};
use sloshing::Result;

fn main() -> Result<()> {
    let cs = CrossSection::rectangle(PI, PI)?;
    let geom = ContainerGeometry::finite(cs.clone(), 1.0)?;
    let strat = Stratification::new(2.0, 0.5)?;
    let id = ModeId::Rect { m: 0, n: 1 };
    let pair = two_layer_pair(1.0, &geom, &strat)?;

    for (name, nu) in [("minus", pair.nu_minus), ("plus", pair.nu_plus)] {
        let c = coefficients(nu, 1.0, &geom, &strat, 1.0)?;
        let pp = PotentialPair::eigenmode(&cs, id, c)?;
        let r = rayleigh_two_layer(&pp, &geom, &strat, 128)?;
        println!("{name:>5}: nu = {nu:.10}  quotient = {r:.10}  A = {:.6} B = {:.6}", c.a, c.b);
    }

    let w = 1f64.tanh();
    for rho in [1.1, 2.0, 10.0] {
        let s = Stratification::new(rho, 0.5)?;
        let trial = PotentialPair::homogeneous_trial(&cs, id, 1.0, &s)?;
        let r = rayleigh_two_layer(&trial, &geom, &s, 128)?;
        println!("trial rho = {rho:>4}: R = {r:.8} < tanh 1 = {w:.8}");
    }

    let c = coefficients(pair.nu_minus, 1.0, &geom, &strat, 1.0)?;
    println!("\ny,profile (minus mode)");
    for (y, v) in vertical_profile(&c, 11) {
        println!("{y:.2},{v:.8}");
    }
    Ok(())
}
