//! Per-wavenumber dispersion relations.
//!
//! For a membrane eigenvalue `k²` the two-layer eigenvalues are the roots of
//!
//! ```text
//! ν² cosh kd − ν k [sinh kd + (ρ−1) cosh kh sinh k(d−h)] + k²(ρ−1) sinh kh sinh k(d−h) = 0
//! ```
//!
//! Everything is evaluated after dividing by `k² cosh kd`, in terms of
//! `x = ν/k` and the bounded ratios
//!
//! ```text
//! T = tanh kd
//! P = cosh kh sinh k(d−h) / cosh kd
//! Q = sinh kh sinh k(d−h) / cosh kd
//! S = sinh k(d−h) / cosh kd
//! ```
//!
//! so that the quadratic becomes `x² − (T + tP) x + tQ = 0` with `t = ρ − 1`.
//! Its discriminant is written as the sum of two nonnegative terms,
//! `(tP − (Q − S²)/P)² + 4QS²/P²`, using the identity `TP − Q = S²`;
//! there `S/P = sech kh` and `(Q − S²)/P = 2 tanh kh − T`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperbolic::{
    cosh_sinh_over_cosh_sum, ln_cosh, ln_sinh, sinh_over_cosh, sinh_sinh_over_cosh_sum, tanh_gap,
};
use crate::membrane::CrossSection;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Depth {
    Finite(f64),
    Infinite,
}

impl Depth {
    pub fn finite(self) -> Option<f64> {
        match self {
            Depth::Finite(d) => Some(d),
            Depth::Infinite => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContainerGeometry {
    pub cross_section: CrossSection,
    pub depth: Depth,
}

impl ContainerGeometry {
    pub fn new(cross_section: CrossSection, depth: Depth) -> Result<Self> {
        let g = ContainerGeometry { cross_section, depth };
        g.validate()?;
        Ok(g)
    }

    pub fn finite(cross_section: CrossSection, depth: f64) -> Result<Self> {
        Self::new(cross_section, Depth::Finite(depth))
    }

    pub fn validate(&self) -> Result<()> {
        self.cross_section.validate()?;
        if let Depth::Finite(d) = self.depth {
            if !(d > 0.0) || !d.is_finite() {
                return Err(Error::InvalidParameter(format!("depth must be positive and finite, got {d}")));
            }
        }
        Ok(())
    }

    pub fn finite_depth(&self) -> Result<f64> {
        self.depth.finite().ok_or(Error::InfiniteDepth)
    }
}

/// Density ratio `ρ = ρ₂/ρ₁ > 1` and interface depth `h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stratification {
    pub rho: f64,
    pub h: f64,
}

impl Stratification {
    pub fn new(rho: f64, h: f64) -> Result<Self> {
        if !(rho > 1.0) || !rho.is_finite() {
            return Err(Error::InvalidParameter(format!("rho must exceed 1, got {rho}")));
        }
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::InvalidParameter(format!("h must be positive, got {h}")));
        }
        Ok(Stratification { rho, h })
    }

    pub fn check_against(&self, depth: Depth) -> Result<()> {
        Stratification::new(self.rho, self.h)?;
        if let Depth::Finite(d) = depth {
            if self.h >= d {
                return Err(Error::InvalidParameter(format!(
                    "interface depth h = {} must be below the container depth d = {d}",
                    self.h
                )));
            }
        }
        Ok(())
    }
}

/// The two eigenvalues attached to one membrane wavenumber.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SloshingPair {
    pub k: f64,
    pub nu_minus: f64,
    pub nu_plus: f64,
    /// `b / cosh kd`
    pub b_scaled: f64,
    /// `𝒟 / cosh² kd`
    pub disc_scaled: f64,
    /// `(ν⁺ − k tanh kd) / k`, evaluated without cancellation.
    pub plus_gap_scaled: f64,
    /// `(k tanh kd − ν⁻) / k`, evaluated without cancellation.
    pub minus_gap_scaled: f64,
    /// `(k tanh kh − ν⁻) / k`, evaluated without cancellation.
    pub interface_gap_scaled: f64,
}

impl SloshingPair {
    pub fn nu_homogeneous(&self) -> f64 {
        self.nu_minus + self.k * self.minus_gap_scaled
    }
}

#[derive(Debug, Clone, Copy)]
struct Ratios {
    t: f64,
    p: f64,
    q: f64,
    s: f64,
}

fn ratios(k: f64, d: f64, h: f64) -> Ratios {
    let kd = k * d;
    let kh = k * h;
    let kl = k * (d - h);
    Ratios {
        t: kd.tanh(),
        p: cosh_sinh_over_cosh_sum(kh, kl),
        q: sinh_sinh_over_cosh_sum(kh, kl),
        s: sinh_over_cosh(kl, kd),
    }
}

/// `k tanh kd` for finite depth, `k` for infinite depth.
pub fn homogeneous_eigenvalue(k: f64, depth: Depth) -> Result<f64> {
    check_k(k)?;
    Ok(match depth {
        Depth::Finite(d) => k * (k * d).tanh(),
        Depth::Infinite => k,
    })
}

fn check_k(k: f64) -> Result<()> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("k must be positive and finite, got {k}")))
    }
}

/// `ν^(−) ≤ ν^(+)` for one membrane wavenumber `k` in a container of finite depth.
pub fn two_layer_pair(k: f64, geom: &ContainerGeometry, strat: &Stratification) -> Result<SloshingPair> {
    let d = geom.finite_depth()?;
    strat.check_against(geom.depth)?;
    pair_at_depth(k, d, strat)
}

/// Same as [`two_layer_pair`] with the depth given directly.
pub fn pair_at_depth(k: f64, d: f64, strat: &Stratification) -> Result<SloshingPair> {
    check_k(k)?;
    strat.check_against(Depth::Finite(d))?;
    let Ratios { t: tanh_kd, p, q, s } = ratios(k, d, strat.h);
    let t = strat.rho - 1.0;
    let kh = k * strat.h;
    let tanh_kh = kh.tanh();
    // T − tanh kh = S / cosh kh
    let hd_gap = tanh_gap(kh, k * d);
    let sech_kh = 1.0 / kh.cosh();
    let b = tanh_kd + t * p;
    // (Q − S²)/P = tanh kh − hd_gap
    let shift = t * p - (tanh_kh - hd_gap);
    let disc = shift * shift + 4.0 * q * sech_kh * sech_kh;
    if !(disc > 0.0) || !disc.is_finite() {
        return Err(Error::NumericalFault(format!(
            "nonpositive discriminant {disc:e} at k = {k}, d = {d}, h = {}, rho = {}",
            strat.h, strat.rho
        )));
    }
    let root = disc.sqrt();
    let x_plus = 0.5 * (b + root);
    // product of the roots is tQ
    let x_minus = 2.0 * t * q / (b + root);

    let ts2 = t * s * s;
    let plus_gap = if t * p >= tanh_kd {
        0.5 * (t * p - tanh_kd + root)
    } else {
        2.0 * ts2 / (root + tanh_kd - t * p)
    };
    let minus_gap = if plus_gap > 0.0 { ts2 / plus_gap } else { tanh_kd - x_minus };
    let interface_gap = if plus_gap + hd_gap > 0.0 {
        tanh_kh * hd_gap / (plus_gap + hd_gap)
    } else {
        // both gaps underflow; their ratio does not
        let ln_s = ln_sinh(k * (d - strat.h)) - ln_cosh(k * d);
        let ln_plus = std::f64::consts::LN_2 + t.ln() + 2.0 * ln_s - (root + tanh_kd - t * p).ln();
        let ln_hd = ln_s - ln_cosh(kh);
        tanh_kh / (1.0 + (ln_plus - ln_hd).exp())
    };

    Ok(SloshingPair {
        k,
        nu_minus: k * x_minus,
        nu_plus: k * x_plus,
        b_scaled: b,
        disc_scaled: disc,
        plus_gap_scaled: plus_gap,
        minus_gap_scaled: minus_gap,
        interface_gap_scaled: interface_gap,
    })
}

/// Natural logs of the scaled gaps of a [`SloshingPair`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LnGaps {
    pub plus: f64,
    pub minus: f64,
    pub interface: f64,
}

/// Logs of the three gaps, finite wherever the gaps are positive in exact
/// arithmetic, including where the gaps themselves underflow (`kh` or
/// `k(d−h)` in the hundreds).
pub fn ln_gaps(k: f64, d: f64, strat: &Stratification) -> Result<LnGaps> {
    let pair = pair_at_depth(k, d, strat)?;
    let Ratios { t: tanh_kd, p, .. } = ratios(k, d, strat.h);
    let t = strat.rho - 1.0;
    let kh = k * strat.h;
    let ln_s = ln_sinh(k * (d - strat.h)) - ln_cosh(k * d);
    let root = pair.disc_scaled.sqrt();
    let plus = if t * p >= tanh_kd {
        pair.plus_gap_scaled.ln()
    } else {
        std::f64::consts::LN_2 + t.ln() + 2.0 * ln_s - (root + tanh_kd - t * p).ln()
    };
    // (T − x⁻)(x⁺ − T) = t S²
    let minus = t.ln() + 2.0 * ln_s - plus;
    let ln_hd = ln_s - ln_cosh(kh);
    let (hi, lo) = if plus > ln_hd { (plus, ln_hd) } else { (ln_hd, plus) };
    let ln_sum = hi + (lo - hi).exp().ln_1p();
    Ok(LnGaps { plus, minus, interface: kh.tanh().ln() + ln_hd - ln_sum })
}

/// Left side of the dispersion quadratic divided by `k² cosh kd`.
pub fn quadratic_residual(nu: f64, k: f64, geom: &ContainerGeometry, strat: &Stratification) -> Result<f64> {
    let d = geom.finite_depth()?;
    strat.check_against(geom.depth)?;
    residual_at_depth(nu, k, d, strat)
}

pub fn residual_at_depth(nu: f64, k: f64, d: f64, strat: &Stratification) -> Result<f64> {
    check_k(k)?;
    let Ratios { t: tanh_kd, p, q, .. } = ratios(k, d, strat.h);
    let t = strat.rho - 1.0;
    let x = nu / k;
    Ok(x * x - x * (tanh_kd + t * p) + t * q)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscriminantMinimum {
    /// `ρ* − 1`, where `𝒟` as a function of `ρ` is smallest.
    pub rho_star_minus_one: f64,
    /// `min_ρ 𝒟 / cosh² kd = 4 sinh kh sinh k(d−h) / (cosh kd cosh² kh)`.
    pub disc_min_scaled: f64,
    /// Natural log of `disc_min_scaled`; finite even where it underflows.
    pub ln_disc_min_scaled: f64,
}

pub fn discriminant_minimum(k: f64, d: f64, h: f64) -> Result<DiscriminantMinimum> {
    check_k(k)?;
    if !(d > 0.0 && h > 0.0 && h < d) {
        return Err(Error::InvalidParameter(format!("need 0 < h < d, got h = {h}, d = {d}")));
    }
    let Ratios { t: tanh_kd, p, q, .. } = ratios(k, d, h);
    let kh = k * h;
    let rho_star_minus_one = (2.0 * kh.tanh() - tanh_kd) / p;
    let ln_disc_min_scaled = (4.0 * q).ln() - 2.0 * ln_cosh(kh);
    Ok(DiscriminantMinimum {
        rho_star_minus_one,
        disc_min_scaled: ln_disc_min_scaled.exp(),
        ln_disc_min_scaled,
    })
}

/// Large-`k` limits `(ν⁻, ν⁺) ≈ k (ρ + 1 ∓ |ρ − 3|) / 4`.
pub fn asymptotic_pair(k: f64, rho: f64) -> Result<(f64, f64)> {
    check_k(k)?;
    if !(rho > 1.0) {
        return Err(Error::InvalidParameter(format!("rho must exceed 1, got {rho}")));
    }
    let w = (rho - 3.0).abs();
    Ok((k * (rho + 1.0 - w) / 4.0, k * (rho + 1.0 + w) / 4.0))
}

/// In an infinitely deep container the only eigenvalue for `k` is `ν = k`,
/// whatever the stratification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InfiniteDepthEigenvalue {
    pub k: f64,
    pub nu: f64,
    pub coincides_with_homogeneous: bool,
}

pub fn infinite_depth_pair(k: f64, strat: &Stratification) -> Result<InfiniteDepthEigenvalue> {
    check_k(k)?;
    strat.check_against(Depth::Infinite)?;
    Ok(InfiniteDepthEigenvalue {
        k,
        nu: k,
        coincides_with_homogeneous: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strat(rho: f64, h: f64) -> Stratification {
        Stratification::new(rho, h).unwrap()
    }

    // direct, unscaled formulas; only usable for moderate kd
    fn naive_pair(k: f64, d: f64, h: f64, rho: f64) -> (f64, f64) {
        let b = (k * d).sinh() + (rho - 1.0) * (k * h).cosh() * (k * (d - h)).sinh();
        let disc = b * b - 4.0 * (rho - 1.0) * (k * d).cosh() * (k * h).sinh() * (k * (d - h)).sinh();
        let c = 2.0 * (k * d).cosh();
        (k * (b - disc.sqrt()) / c, k * (b + disc.sqrt()) / c)
    }

    #[test]
    fn homogeneous_values() {
        assert_eq!(homogeneous_eigenvalue(1.0, Depth::Infinite).unwrap(), 1.0);
        assert!((homogeneous_eigenvalue(1.0, Depth::Finite(1.0)).unwrap() - 0.7615941559557649).abs() < 1e-15);
        let v = homogeneous_eigenvalue(10.0, Depth::Finite(10.0)).unwrap();
        assert!(v.is_finite() && (v - 10.0).abs() < 1e-12);
        assert!(homogeneous_eigenvalue(0.0, Depth::Infinite).is_err());
    }

    #[test]
    fn matches_naive_formula_for_moderate_arguments() {
        for &(k, d, h, rho) in &[(1.0, 1.0, 0.5, 2.0), (0.3, 2.0, 0.2, 7.0), (2.5, 1.5, 1.2, 1.3)] {
            let p = pair_at_depth(k, d, &strat(rho, h)).unwrap();
            let (lo, hi) = naive_pair(k, d, h, rho);
            assert!((p.nu_minus - lo).abs() < 1e-12 * hi, "{lo} vs {}", p.nu_minus);
            assert!((p.nu_plus - hi).abs() < 1e-12 * hi);
            let b_direct = (k * d).tanh() + (rho - 1.0) * (k * h).cosh() * (k * (d - h)).sinh() / (k * d).cosh();
            assert!((p.b_scaled - b_direct).abs() < 1e-13);
        }
    }

    #[test]
    fn rho_to_one_limit() {
        let p = pair_at_depth(1.0, 1.0, &strat(1.0 + 1e-12, 0.5)).unwrap();
        assert!(p.nu_minus.abs() < 1e-11);
        assert!((p.nu_plus - 1f64.tanh()).abs() < 1e-11);
    }

    #[test]
    fn roots_have_tiny_residuals() {
        let s = strat(2.0, 0.5);
        let p = pair_at_depth(1.0, 1.0, &s).unwrap();
        for nu in [p.nu_minus, p.nu_plus] {
            assert!(residual_at_depth(nu, 1.0, 1.0, &s).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn residual_at_zero_and_between_roots() {
        let (k, d, h, rho) = (1.3, 1.0, 0.4, 2.0);
        let s = strat(rho, h);
        let r0 = residual_at_depth(0.0, k, d, &s).unwrap();
        let expect = (rho - 1.0) * (k * h).sinh() * (k * (d - h)).sinh() / (k * d).cosh();
        assert!((r0 - expect).abs() < 1e-15 && r0 > 0.0);
        let nu_w = homogeneous_eigenvalue(k, Depth::Finite(d)).unwrap();
        assert!(residual_at_depth(nu_w, k, d, &s).unwrap() < 0.0);
    }

    #[test]
    fn crossing_case_rho_three_large_depth() {
        let p = pair_at_depth(1.0, 60.0, &strat(3.0, 30.0)).unwrap();
        assert!((p.nu_minus - 1.0).abs() < 1e-6 && (p.nu_plus - 1.0).abs() < 1e-6);
    }

    #[test]
    fn discriminant_minimum_matches_golden_section() {
        let (k, d, h) = (1.0, 1.0, 0.5);
        let min = discriminant_minimum(k, d, h).unwrap();
        let disc = |rho: f64| pair_at_depth(k, d, &strat(rho, h)).unwrap().disc_scaled;
        // golden-section search on (1, 100)
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let (mut a, mut b) = (1.0 + 1e-12, 100.0);
        for _ in 0..200 {
            let c = b - g * (b - a);
            let e = a + g * (b - a);
            if disc(c) < disc(e) {
                b = e;
            } else {
                a = c;
            }
        }
        let rho_min = 0.5 * (a + b);
        assert!((disc(rho_min) - min.disc_min_scaled).abs() < 1e-9);
        assert!((rho_min - 1.0 - min.rho_star_minus_one).abs() < 1e-4);
        assert!(min.disc_min_scaled > 0.0);
    }

    #[test]
    fn discriminant_minimum_vanishes_near_bottom() {
        let m = discriminant_minimum(1.0, 1.0, 1.0 - 1e-9).unwrap();
        assert!(m.disc_min_scaled < 1e-8);
        assert!(discriminant_minimum(1.0, 800.0, 400.0).unwrap().ln_disc_min_scaled.is_finite());
    }

    #[test]
    fn asymptotic_cases() {
        assert_eq!(asymptotic_pair(2.0, 3.0).unwrap(), (2.0, 2.0));
        assert_eq!(asymptotic_pair(1.0, 5.0).unwrap(), (1.0, 2.0));
        assert_eq!(asymptotic_pair(1.0, 2.0).unwrap(), (0.5, 1.0));
    }

    #[test]
    fn infinite_depth_ignores_stratification() {
        assert_eq!(infinite_depth_pair(1.5, &strat(7.0, 3.0)).unwrap().nu, 1.5);
        assert_eq!(infinite_depth_pair(1.5, &strat(1.01, 0.1)).unwrap().nu, 1.5);
        assert_eq!(
            infinite_depth_pair(2.0, &strat(2.0, 1.0)).unwrap().nu,
            homogeneous_eigenvalue(2.0, Depth::Infinite).unwrap()
        );
    }

    #[test]
    fn gaps_match_direct_differences() {
        let (k, d, h, rho) = (1.2, 1.0, 0.35, 2.5);
        let p = pair_at_depth(k, d, &strat(rho, h)).unwrap();
        let t = (k * d).tanh();
        assert!((p.plus_gap_scaled - (p.nu_plus / k - t)).abs() < 1e-14);
        assert!((p.minus_gap_scaled - (t - p.nu_minus / k)).abs() < 1e-14);
        assert!((p.interface_gap_scaled - ((k * h).tanh() - p.nu_minus / k)).abs() < 1e-14);
    }

    #[test]
    fn ln_gaps_agree_and_survive_underflow() {
        let s = strat(2.0, 0.5);
        let pair = pair_at_depth(1.3, 1.0, &s).unwrap();
        let g = ln_gaps(1.3, 1.0, &s).unwrap();
        assert!((g.plus - pair.plus_gap_scaled.ln()).abs() < 1e-12);
        assert!((g.minus - pair.minus_gap_scaled.ln()).abs() < 1e-12);
        assert!((g.interface - pair.interface_gap_scaled.ln()).abs() < 1e-12);

        let deep = strat(1.5, 0.99);
        let pair = pair_at_depth(700.0, 1.0, &deep).unwrap();
        assert_eq!(pair.plus_gap_scaled, 0.0);
        let g = ln_gaps(700.0, 1.0, &deep).unwrap();
        assert!(g.plus.is_finite() && g.plus < -1000.0);
        assert!(g.minus.is_finite() && g.interface.is_finite());

        let both = strat(1.07, 0.835);
        let pair = pair_at_depth(484.0, 1.0, &both).unwrap();
        assert!(pair.interface_gap_scaled > 0.9 && pair.interface_gap_scaled < 1.0);
    }

    #[test]
    fn rejects_invalid_inputs() {
        assert!(Stratification::new(1.0, 0.5).is_err());
        assert!(Stratification::new(2.0, 0.0).is_err());
        let geom = ContainerGeometry::finite(CrossSection::rectangle(1.0, 1.0).unwrap(), 1.0).unwrap();
        assert!(two_layer_pair(1.0, &geom, &strat(2.0, 1.5)).is_err());
        let inf = ContainerGeometry::new(CrossSection::rectangle(1.0, 1.0).unwrap(), Depth::Infinite).unwrap();
        assert!(matches!(two_layer_pair(1.0, &inf, &strat(2.0, 0.5)), Err(Error::InfiniteDepth)));
    }

    #[test]
    fn survives_extreme_arguments() {
        for &(k, d, h, rho) in &[(700.0, 1.0, 0.5, 50.0), (700.0, 1.0, 0.99, 3.0), (0.1, 1.0, 0.01, 1.0001)] {
            let p = pair_at_depth(k, d, &strat(rho, h)).unwrap();
            assert!(p.nu_minus.is_finite() && p.nu_plus.is_finite() && p.nu_minus > 0.0);
        }
    }
}
