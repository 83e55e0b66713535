//! The merged two-layer spectrum of a vertical cylinder and its counting
//! function.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::dispersion::{pair_at_depth, ContainerGeometry, Depth, Stratification};
use crate::error::{Error, Result};
use crate::membrane::membrane_spectrum;

/// Slack on the `k` bound implied by the large-`k` slopes.
pub const K_BOUND_MARGIN: f64 = 1.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Minus,
    Plus,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Minus => "minus",
            Branch::Plus => "plus",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub nu: f64,
    pub branch: Branch,
    pub k_squared: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SloshingSpectrum {
    pub entries: Vec<SpectrumEntry>,
    pub nu_max: f64,
    /// Set when the membrane provider could not reach the completeness bound.
    pub truncated: bool,
}

impl SloshingSpectrum {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total count, multiplicities included.
    pub fn total_count(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }
}

fn sort_entries(entries: &mut [SpectrumEntry]) {
    entries.sort_by(|a, b| {
        a.nu
            .total_cmp(&b.nu)
            .then(a.k_squared.total_cmp(&b.k_squared))
            .then(a.branch.cmp(&b.branch))
    });
}

/// Every `ν^(±) <= nu_max`, sorted by value.
///
/// Membrane levels are taken up to `k_max = nu_max · max(2/(ρ−1), 1) · 1.25`;
/// the bound is doubled until no level in `(k_max, 1.25 k_max]` has a minus
/// eigenvalue at or below `nu_max`.
pub fn enumerate_spectrum(geom: &ContainerGeometry, strat: &Stratification, nu_max: f64) -> Result<SloshingSpectrum> {
    let d = geom.finite_depth()?;
    strat.check_against(geom.depth)?;
    if !(nu_max > 0.0) || !nu_max.is_finite() {
        return Err(Error::InvalidParameter(format!("nu_max must be positive, got {nu_max}")));
    }
    let slope_inv = (2.0 / (strat.rho - 1.0)).max(1.0);
    let mut k_max = nu_max * slope_inv * K_BOUND_MARGIN;
    let limit = geom.cross_section.provider_limit();
    let mut truncated = false;

    let levels = loop {
        let k_guard = k_max * K_BOUND_MARGIN;
        let mut guard_sq = k_guard * k_guard;
        if guard_sq > limit {
            truncated = true;
            guard_sq = limit;
        }
        let all = if guard_sq > 0.0 { membrane_spectrum(&geom.cross_section, guard_sq)? } else { Vec::new() };
        let mut escaped = false;
        for level in all.iter().filter(|l| l.k_squared > k_max * k_max) {
            if pair_at_depth(level.k(), d, strat)?.nu_minus <= nu_max {
                escaped = true;
                break;
            }
        }
        if !escaped || truncated {
            break all;
        }
        k_max *= 2.0;
    };

    let mut entries = Vec::new();
    for level in &levels {
        let pair = pair_at_depth(level.k(), d, strat)?;
        for (nu, branch) in [(pair.nu_minus, Branch::Minus), (pair.nu_plus, Branch::Plus)] {
            if nu <= nu_max {
                entries.push(SpectrumEntry {
                    nu,
                    branch,
                    k_squared: level.k_squared,
                    multiplicity: level.multiplicity,
                });
            }
        }
    }
    sort_entries(&mut entries);
    Ok(SloshingSpectrum { entries, nu_max, truncated })
}

/// Homogeneous-fluid spectrum `ν^W = k tanh kd` up to `nu_max`, reported as
/// plus-branch entries.
pub fn enumerate_homogeneous(geom: &ContainerGeometry, nu_max: f64) -> Result<SloshingSpectrum> {
    if !(nu_max > 0.0) || !nu_max.is_finite() {
        return Err(Error::InvalidParameter(format!("nu_max must be positive, got {nu_max}")));
    }
    // k tanh kd <= nu implies k <= nu / tanh(nu d) for finite depth
    let k_max = match geom.depth {
        Depth::Finite(d) => nu_max / (nu_max * d).tanh(),
        Depth::Infinite => nu_max,
    } * K_BOUND_MARGIN;
    let limit = geom.cross_section.provider_limit();
    let truncated = k_max * k_max > limit;
    let levels = membrane_spectrum(&geom.cross_section, (k_max * k_max).min(limit))?;
    let mut entries = Vec::new();
    for level in levels {
        let k = level.k();
        let nu = match geom.depth {
            Depth::Finite(d) => k * (k * d).tanh(),
            Depth::Infinite => k,
        };
        if nu <= nu_max {
            entries.push(SpectrumEntry {
                nu,
                branch: Branch::Plus,
                k_squared: level.k_squared,
                multiplicity: level.multiplicity,
            });
        }
    }
    sort_entries(&mut entries);
    Ok(SloshingSpectrum { entries, nu_max, truncated })
}

/// `𝒩(ν)`: number of eigenvalues `<= ν`, multiplicities included.
pub fn distribution_function(sp: &SloshingSpectrum, nu: f64) -> Result<usize> {
    if nu > sp.nu_max {
        return Err(Error::OutOfRange { nu, nu_max: sp.nu_max });
    }
    let end = sp.entries.partition_point(|e| e.nu <= nu);
    Ok(sp.entries[..end].iter().map(|e| e.multiplicity).sum())
}

/// Leading-order counting law `[4/(ρ−1)² + 1] |D| ν² / (4π)`.
pub fn weyl_count(area: f64, rho: f64, nu: f64) -> f64 {
    (4.0 / ((rho - 1.0) * (rho - 1.0)) + 1.0) * area * nu * nu / (4.0 * PI)
}

/// Homogeneous counting law `|D| ν² / (4π)`.
pub fn weyl_count_homogeneous(area: f64, nu: f64) -> f64 {
    area * nu * nu / (4.0 * PI)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeylPoint {
    pub nu: f64,
    pub count: usize,
    pub predicted: f64,
    pub ratio: f64,
}

fn check_increasing(nu_list: &[f64]) -> Result<()> {
    if nu_list.is_empty() {
        return Err(Error::InvalidParameter("nu_list is empty".into()));
    }
    if nu_list.windows(2).any(|w| w[1] <= w[0]) || !(nu_list[0] > 0.0) {
        return Err(Error::InvalidParameter("nu_list must be positive and increasing".into()));
    }
    Ok(())
}

/// `𝒩(ν)` divided by its leading-order law for each `ν` in `nu_list`.
pub fn weyl_ratio(geom: &ContainerGeometry, strat: &Stratification, nu_list: &[f64]) -> Result<Vec<WeylPoint>> {
    check_increasing(nu_list)?;
    let sp = enumerate_spectrum(geom, strat, *nu_list.last().unwrap())?;
    let area = geom.cross_section.area();
    nu_list
        .iter()
        .map(|&nu| {
            let count = distribution_function(&sp, nu)?;
            let predicted = weyl_count(area, strat.rho, nu);
            Ok(WeylPoint { nu, count, predicted, ratio: count as f64 / predicted })
        })
        .collect()
}

/// Homogeneous counterpart of [`weyl_ratio`], counting `ν^W`.
pub fn weyl_ratio_homogeneous(geom: &ContainerGeometry, nu_list: &[f64]) -> Result<Vec<WeylPoint>> {
    check_increasing(nu_list)?;
    let sp = enumerate_homogeneous(geom, *nu_list.last().unwrap())?;
    let area = geom.cross_section.area();
    nu_list
        .iter()
        .map(|&nu| {
            let count = distribution_function(&sp, nu)?;
            let predicted = weyl_count_homogeneous(area, nu);
            Ok(WeylPoint { nu, count, predicted, ratio: count as f64 / predicted })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::membrane::CrossSection;

    fn square_geom() -> ContainerGeometry {
        ContainerGeometry::finite(CrossSection::rectangle(PI, PI).unwrap(), 1.0).unwrap()
    }

    #[test]
    fn below_fundamental_is_empty() {
        let s = Stratification::new(2.0, 0.5).unwrap();
        let g = square_geom();
        let nu1 = pair_at_depth(1.0, 1.0, &s).unwrap().nu_minus;
        let sp = enumerate_spectrum(&g, &s, nu1 * 0.999).unwrap();
        assert!(sp.is_empty());
        assert_eq!(distribution_function(&sp, nu1 * 0.5).unwrap(), 0);
    }

    #[test]
    fn fundamental_counts_twice() {
        let s = Stratification::new(2.0, 0.5).unwrap();
        let g = square_geom();
        let nu1 = pair_at_depth(1.0, 1.0, &s).unwrap().nu_minus;
        let sp = enumerate_spectrum(&g, &s, 2.0).unwrap();
        assert_eq!(distribution_function(&sp, nu1).unwrap(), 2);
        assert!(matches!(distribution_function(&sp, 3.0), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn plus_level_up_to_first_plus() {
        let s = Stratification::new(2.0, 0.5).unwrap();
        let g = square_geom();
        let nu_plus_1 = pair_at_depth(1.0, 1.0, &s).unwrap().nu_plus;
        let sp = enumerate_spectrum(&g, &s, nu_plus_1).unwrap();
        let plus: Vec<_> = sp.entries.iter().filter(|e| e.branch == Branch::Plus).collect();
        assert_eq!(plus.len(), 1);
        assert_eq!(plus[0].k_squared, 1.0);

        // brute force over a dense membrane list
        let mut expected = 0;
        for m in 0..200u32 {
            for n in 0..200u32 {
                if m + n == 0 {
                    continue;
                }
                let k = ((m * m + n * n) as f64).sqrt();
                if pair_at_depth(k, 1.0, &s).unwrap().nu_minus <= nu_plus_1 {
                    expected += 1;
                }
            }
        }
        let minus_count: usize =
            sp.entries.iter().filter(|e| e.branch == Branch::Minus).map(|e| e.multiplicity).sum();
        assert_eq!(minus_count, expected);
    }

    #[test]
    fn tabulated_provider_flags_truncation() {
        let cs = CrossSection::tabulated(&[(1.0, 1), (2.0, 2)], 1.0).unwrap();
        let g = ContainerGeometry::finite(cs, 1.0).unwrap();
        let s = Stratification::new(2.0, 0.5).unwrap();
        let sp = enumerate_spectrum(&g, &s, 5.0).unwrap();
        assert!(sp.truncated);
        assert_eq!(sp.len(), 4);
    }

    #[test]
    fn ties_between_branches_kept_distinct() {
        let mut entries = vec![
            SpectrumEntry { nu: 1.0, branch: Branch::Plus, k_squared: 1.0, multiplicity: 1 },
            SpectrumEntry { nu: 1.0, branch: Branch::Minus, k_squared: 2.0, multiplicity: 2 },
        ];
        sort_entries(&mut entries);
        assert_eq!(entries.len(), 2);
        let sp = SloshingSpectrum { entries, nu_max: 2.0, truncated: false };
        assert_eq!(distribution_function(&sp, 1.0).unwrap(), 3);
    }
}
