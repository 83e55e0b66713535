//! The root-finding system. Strong stratification gives a unique root;
//! weak stratification gives two physical fluids with the same pair of
//! eigenvalues, and the solver returns both.
//!
//! cargo run --example inverse_minus

use std::f64::consts::PI;

use sloshing::dispersion::{ContainerGeometry, Stratification};
use sloshing::inverse::{recover, synthesize_measurement, RecoveryBranch, RecoveryOptions};
use sloshing::membrane::CrossSection;
use sloshing::{Error, Result};

fn main() -> Result<()> {
    let geom = ContainerGeometry::finite(CrossSection::rectangle(PI, PI)?, 1.0)?;
    let opts = RecoveryOptions::default();
    for (rho, h) in [(5.0, 0.7), (1.05, 0.4)] {
        let m = synthesize_measurement(&geom, &Stratification::new(rho, h)?, Some(RecoveryBranch::MinusSystem), 24, 7)?;
        print!("truth ({rho}, {h}): ");
        match recover(&m, &opts) {
            Ok(r) => println!(
                "unique rho = {:.12}, h = {:.12} (sufficient condition for uniqueness: {:?})",
                r.rho, r.h, r.diagnostics.uniqueness_sufficient
            ),
            Err(Error::MultipleRoots { candidates, verdict }) => {
                println!("{} roots, verdict {verdict:?}", candidates.len());
                for c in candidates {
                    let tag = if c.disagreement <= opts.consistency_tol { "fits the data" } else { "rejected" };
                    println!("    rho = {:.12}, h = {:.12}  {tag}", c.rho, c.h);
                }
            }
            Err(e) => println!("{}: {e}", e.kind()),
        }
    }
    Ok(())
}
