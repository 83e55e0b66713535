//! Counting function of the merged spectrum against its leading-order law,
//! next to the homogeneous fluid.
//!
//! cargo run --release --example weyl_count

use std::f64::consts::PI;

use sloshing::dispersion::{ContainerGeometry, Stratification};
use sloshing::membrane::CrossSection;
use sloshing::spectrum::{weyl_ratio, weyl_ratio_homogeneous};
use sloshing::Result;

fn main() -> Result<()> {
    let geom = ContainerGeometry::finite(CrossSection::rectangle(PI, PI)?, 1.0)?;
    let strat = Stratification::new(2.0, 0.5)?;
    let nus = [5.0, 10.0, 20.0, 30.0, 40.0];
    let two = weyl_ratio(&geom, &strat, &nus)?;
    let one = weyl_ratio_homogeneous(&geom, &nus)?;
    println!("{:>6} {:>8} {:>10} {:>8} {:>10}", "nu", "N", "N/law", "N_hom", "N_hom/law");
    for (a, b) in two.iter().zip(&one) {
        println!("{:>6} {:>8} {:>10.5} {:>8} {:>10.5}", a.nu, a.count, a.ratio, b.count, b.ratio);
    }
    Ok(())
}
