//! Integer-order Bessel functions of the first kind and the positive zeros
//! of their derivatives.
//!
//! `J_m` is evaluated from Bessel's integral
//! `J_m(x) = (1/2π) ∫_{-π}^{π} cos(mτ - x sin τ) dτ`; the integrand is
//! entire and 2π-periodic, so the trapezoid rule converges geometrically
//! once the node count exceeds `m + x` by a margin.

use std::f64::consts::PI;

use crate::error::{Error, Result};

fn node_count(m: u32, x: f64) -> usize {
    let n = (1.5 * (x.abs() + m as f64)).ceil() as usize + 64;
    n + (n % 2)
}

/// `J_m(x)` for integer `m >= 0`.
pub fn bessel_j(m: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    let n = node_count(m, x);
    let mf = m as f64;
    let step = 2.0 * PI / n as f64;
    let mut sum = 0.0;
    for j in 0..n {
        let t = j as f64 * step;
        sum += (mf * t - x * t.sin()).cos();
    }
    sum / n as f64
}

/// `J'_m(x)`, from `d/dx J_m(x) = (1/2π) ∫ sin τ · sin(mτ - x sin τ) dτ`.
pub fn bessel_j_prime(m: u32, x: f64) -> f64 {
    let n = node_count(m + 1, x);
    let mf = m as f64;
    let step = 2.0 * PI / n as f64;
    let mut sum = 0.0;
    for j in 0..n {
        let t = j as f64 * step;
        sum += t.sin() * (mf * t - x * t.sin()).sin();
    }
    sum / n as f64
}

const ZERO_REL_TOL: f64 = 1e-13;
const SCAN_STEP: f64 = 0.05;

/// Bisect `f` on a sign-changing bracket down to `rel_tol` relative width.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, rel_tol: f64, abs_tol: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if (hi - lo) <= rel_tol * mid.abs() + abs_tol || mid == lo || mid == hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The positive zeros `j'_{m,1} < j'_{m,2} < …` of `J'_m` that do not exceed
/// `x_max`. For `m = 0` the trivial zero at the origin is excluded.
///
/// Each zero is bracketed by a sign change of `J'_m` on a fine scan that
/// starts at `max(m, 0.1)`: no zero lies below `m`, since `j'_{m,1} > m`.
pub fn bessel_j_prime_zeros(m: u32, x_max: f64) -> Result<Vec<f64>> {
    if !(x_max > 0.0) || !x_max.is_finite() {
        return Err(Error::InvalidParameter(format!("x_max must be positive, got {x_max}")));
    }
    let mut zeros = Vec::new();
    let mut a = (m as f64).max(0.1);
    let mut fa = bessel_j_prime(m, a);
    // zeros are separated by roughly π; the scan step resolves them all
    while a < x_max + SCAN_STEP {
        let b = a + SCAN_STEP;
        let fb = bessel_j_prime(m, b);
        if fa == 0.0 {
            if a <= x_max && a > 0.0 {
                zeros.push(a);
            }
        } else if (fa > 0.0) != (fb > 0.0) && fb != 0.0 {
            let z = bisect(|x| bessel_j_prime(m, x), a, b, ZERO_REL_TOL, 0.0);
            if z <= x_max {
                zeros.push(z);
            }
        }
        a = b;
        fa = fb;
    }
    Ok(zeros)
}

#[cfg(test)]
mod tests {
    use super::*;

    // reference values: scipy.special.jv / jvp / jnp_zeros
    #[test]
    fn j_matches_reference_values() {
        assert!((bessel_j(1, 1.8411837813406593) - 0.5818652242815964).abs() < 1e-15);
        assert!((bessel_j(3, 2.5) - 0.21660039103911358).abs() < 1e-15);
        assert!((bessel_j(10, 30.0) - -0.1298768939985887).abs() < 1e-14);
        assert!((bessel_j(0, 50.0) - 0.0558123276692518).abs() < 1e-14);
        assert!((bessel_j_prime(2, 7.3) - 0.15533615977639134).abs() < 1e-15);
        assert_eq!(bessel_j(1, 0.0), 0.0);
        assert!((bessel_j(0, 0.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn derivative_zeros_match_reference() {
        let table: [(u32, [f64; 3]); 5] = [
            (0, [3.8317059702075125, 7.015586669815619, 10.173468135062722]),
            (1, [1.8411837813406595, 5.3314427735250325, 8.536316366346286]),
            (2, [3.0542369282271404, 6.706133194158459, 9.969467823087596]),
            (3, [4.201188941210528, 8.015236598375953, 11.345924310743007]),
            (4, [5.317553126083994, 9.282396285241614, 12.68190844263889]),
        ];
        for (m, expected) in table {
            let zeros = bessel_j_prime_zeros(m, 13.0).unwrap();
            // m = 1 has a fourth zero at 11.706 below the cutoff
            assert_eq!(zeros.len(), if m == 1 { 4 } else { 3 }, "m = {m}: {zeros:?}");
            for (z, e) in zeros.iter().zip(expected) {
                assert!((z - e).abs() <= 2e-13 * e, "m = {m}: {z} vs {e}");
            }
            if m == 1 {
                assert!((zeros[3] - 11.706004902592063).abs() <= 2e-13 * 11.7);
            }
        }
    }

    #[test]
    fn zeros_are_strictly_increasing_and_bracketed() {
        for m in 0..8 {
            let zeros = bessel_j_prime_zeros(m, 30.0).unwrap();
            for w in zeros.windows(2) {
                assert!(w[0] < w[1]);
            }
            for &z in &zeros {
                let left = bessel_j_prime(m, z * (1.0 - 1e-9));
                let right = bessel_j_prime(m, z * (1.0 + 1e-9));
                assert!(left * right < 0.0, "m = {m}, z = {z}");
            }
        }
    }

    #[test]
    fn rejects_bad_range() {
        assert!(bessel_j_prime_zeros(0, -1.0).is_err());
    }
}
