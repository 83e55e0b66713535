//! Neumann spectra of the square and the unit disc, and the finite-difference
//! oracle converging on the square's fundamental level.
//!
//! cargo run --example membrane_spectrum

use std::f64::consts::PI;

use sloshing::membrane::{fd_neumann_oracle, membrane_spectrum, CrossSection};
use sloshing::Result;

fn main() -> Result<()> {
    for cs in [CrossSection::rectangle(PI, PI)?, CrossSection::disc(1.0)?] {
        println!("{cs:?}");
        for level in membrane_spectrum(&cs, 30.0)?.iter().take(8) {
            let ids: Vec<String> = level.mode_ids.iter().map(|id| id.to_string()).collect();
            println!("  k^2 = {:>18.12}  x{}  {}", level.k_squared, level.multiplicity, ids.join(" "));
        }
    }

    let square = CrossSection::rectangle(PI, PI)?;
    let mut prev: Option<f64> = None;
    println!("\nfinite differences, exact k1^2 = 1");
    for n in [32, 64, 128] {
        let err = (fd_neumann_oracle(&square, n, 1)?[0] - 1.0).abs();
        match prev {
            Some(p) => println!("  n = {n:>3}  error {err:.3e}  order {:.3}", (p / err).log2()),
            None => println!("  n = {n:>3}  error {err:.3e}"),
        }
        prev = Some(err);
    }
    Ok(())
}
