//! Drive the command-line front end in-process: write a synthetic
//! measurement with `forward`, then recover it with `inverse`.
//!
//! cargo run --example cli_round_trip

use sloshing::cli::main_with_args;

fn main() {
    let dir = std::env::temp_dir().join("sloshing_cli_round_trip");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let meas = dir.join("measurement.json");
    let meas_s = meas.to_str().expect("utf-8 path");

    let status = main_with_args([
        "sloshing", "forward", "--rho", "2", "--h", "0.3", "--branch", "plus", "--levels", "2",
        "--measurement-out", meas_s,
    ]);
    println!("forward exit status {status}\n");
    let status = main_with_args(["sloshing", "inverse", "--measurement", meas_s, "--format", "csv"]);
    println!("inverse exit status {status}");
}
