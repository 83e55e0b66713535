//! In an unbounded layer the stratification leaves no trace in the
//! spectrum, so recovery is refused.
//!
//! cargo run --example infinite_depth

use std::f64::consts::PI;

use sloshing::dispersion::{infinite_depth_pair, ContainerGeometry, Depth, Stratification};
use sloshing::inverse::{recover, synthesize_measurement, RecoveryOptions};
use sloshing::membrane::CrossSection;
use sloshing::Result;

fn main() -> Result<()> {
    for (rho, h) in [(1.5, 0.2), (10.0, 3.0)] {
        let e = infinite_depth_pair(2.5, &Stratification::new(rho, h)?)?;
        println!("rho = {rho}, h = {h}: nu = {} for k = {}", e.nu, e.k);
    }
    let geom = ContainerGeometry::finite(CrossSection::rectangle(PI, PI)?, 1.0)?;
    let mut m = synthesize_measurement(&geom, &Stratification::new(2.0, 0.3)?, None, 24, 7)?;
    m.geometry.depth = Depth::Infinite;
    match recover(&m, &RecoveryOptions::default()) {
        Ok(_) => println!("unexpected recovery"),
        Err(e) => println!("{}: {e}", e.kind()),
    }
    Ok(())
}
