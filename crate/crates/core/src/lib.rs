//! Sloshing of a two-layer fluid in vertical-walled containers.
//!
//! The container is a cylinder over a cross-section W (rectangle, disc or a
//! tabulated membrane spectrum) filled to depth d, with a heavier layer of
//! relative density ρ below an interface at height h. Each membrane level
//! k² of W produces a pair of sloshing eigenvalues ν⁻ < k tanh kd < ν⁺.
//!
//! * [`membrane`]: Neumann eigenvalues and eigenfunctions of W.
//! * [`dispersion`]: the pair (ν⁻, ν⁺) for one k, in cancellation-free form.
//! * [`spectrum`]: merged and ordered two-layer spectrum, counting function.
//! * [`modes`]: vertical profiles, coupling coefficients, Rayleigh quotient.
//! * [`inverse`]: recovery of (ρ, h) from two eigenvalues and free-surface data.
//! * [`checks`]: numerical property suite behind `sloshing check`.
//! * [`cli`], [`export`]: command-line front end and CSV/JSON writers.
//!
//! Runnable examples live in `examples/`:
//! `membrane_spectrum`, `forward_pairs`, `weyl_count`, `rayleigh_check`,
//! `inverse_plus`, `inverse_minus`, `solvability`, `infinite_depth`,
//! `cli_round_trip`.
//!
//! ```
//! use sloshing::dispersion::{pair_at_depth, Stratification};
//! let s = Stratification::new(2.0, 0.5).unwrap();
//! let p = pair_at_depth(1.0, 1.0, &s).unwrap();
//! assert!(p.nu_minus < 1f64.tanh() && 1f64.tanh() < p.nu_plus);
//! ```

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bessel;
pub mod checks;
pub mod cli;
pub mod dispersion;
pub mod error;
pub mod export;
pub mod hyperbolic;
pub mod inverse;
pub mod membrane;
pub mod modes;
pub mod quadrature;
pub mod spectrum;

pub use error::{Error, Result};
