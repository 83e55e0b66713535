//! The property suite run by `sloshing check` and by the acceptance tests.
//!
//! Each check returns a [`PropertyReport`]; none of them panics on a
//! violated property.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dispersion::{
    asymptotic_pair, infinite_depth_pair, ln_gaps, pair_at_depth, residual_at_depth, ContainerGeometry, Depth,
    Stratification,
};
use crate::error::{Error, Result};
use crate::hyperbolic::sinh_sinh_over_cosh_sum;
use crate::inverse::{
    natural_second_branch, recover, select_system, solve_minus_system, solve_plus_system, synthesize_measurement,
    u_derivatives, u_value, Candidate, ElevationSample, Measurement, MembraneData, RecoveryBranch, RecoveryOptions,
    RecoveryResult,
};
use crate::membrane::{fd_neumann_oracle, membrane_spectrum, CrossSection};
use crate::modes::{coefficients, rayleigh_two_layer, PotentialPair};
use crate::spectrum::{distribution_function, enumerate_spectrum, weyl_count};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub criterion: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl PropertyReport {
    fn new(criterion: u32, name: &str, passed: bool, detail: String) -> Self {
        PropertyReport { criterion, name: name.into(), passed, detail }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteOptions {
    pub quadrature_n: usize,
    pub recovery: RecoveryOptions,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { quadrature_n: 128, recovery: RecoveryOptions::default(), seed: 7 }
    }
}

fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
}

fn lin_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// `(k d, h/d, ρ)` stress grid: 25 × 20 × 25 points, `d = 1`.
pub fn stress_grid() -> Vec<(f64, f64, f64)> {
    let mut out = Vec::new();
    for kd in log_space(0.1, 700.0, 25) {
        for hd in lin_space(0.01, 0.99, 20) {
            for t in log_space(1e-4, 49.0, 25) {
                out.push((kd, hd, 1.0 + t));
            }
        }
    }
    out
}

/// Residual of the dispersion quadratic at both roots, relative to the
/// sum of the magnitudes of its three terms.
pub fn quadratic_residuals() -> PropertyReport {
    let grid = stress_grid();
    let mut worst = 0.0f64;
    let mut faults = Vec::new();
    for &(k, hd, rho) in &grid {
        let outcome = (|| -> Result<f64> {
            let s = Stratification::new(rho, hd)?;
            let pair = pair_at_depth(k, 1.0, &s)?;
            let tq = (rho - 1.0) * sinh_sinh_over_cosh_sum(k * hd, k * (1.0 - hd));
            let mut w = 0.0f64;
            for nu in [pair.nu_minus, pair.nu_plus] {
                if !nu.is_finite() {
                    return Err(Error::NumericalFault(format!("non-finite root {nu}")));
                }
                let x = nu / k;
                let scale = x * x + x * pair.b_scaled + tq;
                w = w.max(residual_at_depth(nu, k, 1.0, &s)?.abs() / scale);
            }
            Ok(w)
        })();
        match outcome {
            Ok(w) => worst = worst.max(w),
            Err(e) => faults.push(format!("kd={k} h/d={hd} rho={rho}: {e}")),
        }
    }
    PropertyReport::new(
        1,
        "quadratic_residuals",
        faults.is_empty() && worst <= 1e-11,
        format!("{} configurations, max scale-free residual {worst:.3e}, {} faults", grid.len(), faults.len()),
    )
}

fn within_ulps(a: f64, b: f64, n: f64) -> bool {
    (a - b).abs() <= n * f64::EPSILON * a.abs().max(b.abs())
}

/// A strict inequality `lo < hi` holds if it holds in floating point, or
/// the two values tie within 4 ulp and the exact gap has a finite log.
fn strictly_below(lo: f64, hi: f64, ln_gap: f64) -> bool {
    lo < hi || (within_ulps(lo, hi, 4.0) && ln_gap.is_finite())
}

pub fn ordering_and_ranges() -> PropertyReport {
    let grid = stress_grid();
    let mut violations = 0usize;
    let mut first = None;
    for &(k, hd, rho) in &grid {
        let ok = (|| -> Result<bool> {
            let s = Stratification::new(rho, hd)?;
            let pair = pair_at_depth(k, 1.0, &s)?;
            let g = ln_gaps(k, 1.0, &s)?;
            let w = k * k.tanh();
            let wh = k * (k * hd).tanh();
            Ok(pair.nu_minus > 0.0
                && strictly_below(pair.nu_minus, w, g.minus)
                && strictly_below(w, pair.nu_plus, g.plus)
                && strictly_below(pair.nu_minus, wh, g.interface)
                && pair.minus_gap_scaled >= 0.0
                && pair.plus_gap_scaled >= 0.0
                && pair.interface_gap_scaled >= 0.0)
        })()
        .unwrap_or(false);
        if !ok {
            violations += 1;
            first.get_or_insert(format!(" first at kd={k} h/d={hd} rho={rho}"));
        }
    }
    PropertyReport::new(
        2,
        "ordering_and_ranges",
        violations == 0,
        format!("{} configurations, {violations} violations{}", grid.len(), first.unwrap_or_default()),
    )
}

/// 100 random `(k, d, h)` with `k d ∈ [0.1, 10]`, each swept over 50
/// values of `ρ` in `[1.01, 50]`.
pub fn monotonicity_in_rho(seed: u64) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rhos: Vec<f64> = log_space(0.01, 49.0, 50).into_iter().map(|t| 1.0 + t).collect();
    let mut violations = 0usize;
    let mut first = None;
    for _ in 0..100 {
        let d = 0.5 + 1.5 * rng.random::<f64>();
        let kd = (0.1f64.ln() + (100.0f64).ln() * rng.random::<f64>()).exp();
        let k = kd / d;
        let h = d * (0.05 + 0.9 * rng.random::<f64>());
        let mut prev: Option<(f64, f64)> = None;
        for &rho in &rhos {
            let pair = Stratification::new(rho, h).and_then(|s| pair_at_depth(k, d, &s));
            let Ok(p) = pair else {
                violations += 1;
                continue;
            };
            if let Some((m, pl)) = prev {
                if !(p.nu_minus > m && p.nu_plus > pl) {
                    violations += 1;
                    first.get_or_insert(format!(" first at k={k} d={d} h={h} rho={rho}"));
                }
            }
            prev = Some((p.nu_minus, p.nu_plus));
        }
    }
    PropertyReport::new(
        3,
        "monotonicity_in_rho",
        violations == 0,
        format!("100 samples x 50 densities, {violations} violations{}", first.unwrap_or_default()),
    )
}

/// `|ν^(±)/k − limit|` for `k = 1, 2, …, 512` at `d = 1`, `h = 0.5`.
pub fn asymptotic_errors(rho: f64) -> Result<Vec<(f64, f64, f64)>> {
    let s = Stratification::new(rho, 0.5)?;
    (0..10)
        .map(|i| {
            let k = 2f64.powi(i);
            let p = pair_at_depth(k, 1.0, &s)?;
            let (lm, lp) = asymptotic_pair(1.0, rho)?;
            Ok((k, (p.nu_minus / k - lm).abs(), (p.nu_plus / k - lp).abs()))
        })
        .collect()
}

/// Decrease at every doubling, where an error already at the round-off
/// floor (4ε relative to the limit) counts as not increasing.
pub fn large_k_asymptotics() -> PropertyReport {
    let mut ok = true;
    let mut notes = Vec::new();
    for rho in [2.0, 3.0, 5.0] {
        let Ok(errs) = asymptotic_errors(rho) else {
            ok = false;
            continue;
        };
        let (lm, lp) = asymptotic_pair(1.0, rho).unwrap_or((f64::NAN, f64::NAN));
        for (branch, limit, pick) in [("minus", lm, 1usize), ("plus", lp, 2usize)] {
            let e: Vec<f64> = errs.iter().map(|r| if pick == 1 { r.1 } else { r.2 }).collect();
            let floor = 4.0 * f64::EPSILON * limit;
            let rise = e.windows(2).position(|w| !(w[1] < w[0] || (w[0] <= floor && w[1] <= floor)));
            let at_64 = e[6];
            if rise.is_some() || !(at_64 < 1e-6) {
                ok = false;
            }
            let trend = match rise {
                None => "decreasing".to_string(),
                Some(i) => format!("rises from k={} ({:.4e}) to k={} ({:.4e})", 1 << i, e[i], 2 << i, e[i + 1]),
            };
            notes.push(format!("rho={rho} {branch}: err(64)={at_64:.2e} {trend}"));
        }
    }
    PropertyReport::new(4, "large_k_asymptotics", ok, notes.join("; "))
}

pub fn weyl_count_square() -> PropertyReport {
    let outcome = (|| -> Result<(usize, f64, f64)> {
        let g = ContainerGeometry::finite(CrossSection::rectangle(PI, PI)?, 1.0)?;
        let s = Stratification::new(2.0, 0.5)?;
        let sp = enumerate_spectrum(&g, &s, 40.0)?;
        let nu = sp.entries.last().map(|e| e.nu).ok_or(Error::NumericalFault("empty spectrum".into()))?;
        let count = distribution_function(&sp, nu)?;
        let predicted = weyl_count(g.cross_section.area(), s.rho, nu);
        Ok((count, nu, count as f64 / predicted))
    })();
    match outcome {
        Ok((count, nu, ratio)) => PropertyReport::new(
            5,
            "weyl_count",
            count >= 5000 && (0.9..=1.1).contains(&ratio),
            format!("N({nu:.6}) = {count}, ratio to leading law {ratio:.6}"),
        ),
        Err(e) => PropertyReport::new(5, "weyl_count", false, e.to_string()),
    }
}

/// Worst relative gap between the quotient and `ν` over the first five
/// levels of the square and the unit disc, both branches.
pub fn rayleigh_on_eigenmodes(quadrature_n: usize) -> PropertyReport {
    let outcome = (|| -> Result<(f64, String)> {
        let s = Stratification::new(2.0, 0.5)?;
        let mut worst = 0.0f64;
        let mut at = String::new();
        for cs in [CrossSection::rectangle(PI, PI)?, CrossSection::disc(1.0)?] {
            let g = ContainerGeometry::finite(cs.clone(), 1.0)?;
            let levels = membrane_spectrum(&cs, 40.0)?;
            for level in levels.iter().take(5) {
                let p = pair_at_depth(level.k(), 1.0, &s)?;
                for nu in [p.nu_minus, p.nu_plus] {
                    let c = coefficients(nu, level.k(), &g, &s, 1.0)?;
                    let pp = PotentialPair::eigenmode(&cs, level.mode_ids[0], c)?;
                    let r = rayleigh_two_layer(&pp, &g, &s, quadrature_n)?;
                    let rel = (r - nu).abs() / nu;
                    if rel > worst {
                        worst = rel;
                        at = format!("{} nu={nu:.6} quotient={r:.6}", level.mode_ids[0]);
                    }
                }
            }
        }
        Ok((worst, at))
    })();
    match outcome {
        Ok((worst, at)) => PropertyReport::new(
            6,
            "rayleigh_reproduces_eigenvalues",
            worst <= 1e-6,
            format!("max relative gap {worst:.3e} at {at}"),
        ),
        Err(e) => PropertyReport::new(6, "rayleigh_reproduces_eigenvalues", false, e.to_string()),
    }
}

/// `R(ρu₁, u₁) < ν₁^W` for the homogeneous fundamental mode.
pub fn rayleigh_trial_pair(quadrature_n: usize) -> PropertyReport {
    let outcome = (|| -> Result<(bool, String)> {
        let mut ok = true;
        let mut notes = Vec::new();
        for cs in [CrossSection::rectangle(PI, PI)?, CrossSection::disc(1.0)?] {
            let g = ContainerGeometry::finite(cs.clone(), 1.0)?;
            let md = MembraneData::from_cross_section(&cs)?;
            let w = md.k1() * md.k1().tanh();
            for rho in [1.1, 2.0, 10.0] {
                let s = Stratification::new(rho, 0.5)?;
                let pp = PotentialPair::homogeneous_trial(&cs, md.fundamental_modes[0], 1.0, &s)?;
                let r = rayleigh_two_layer(&pp, &g, &s, quadrature_n)?;
                ok &= r < w;
                notes.push(format!("rho={rho}: {r:.6}<{w:.6}"));
            }
        }
        Ok((ok, notes.join(" ")))
    })();
    match outcome {
        Ok((ok, d)) => PropertyReport::new(6, "rayleigh_trial_pair_below_homogeneous", ok, d),
        Err(e) => PropertyReport::new(6, "rayleigh_trial_pair_below_homogeneous", false, e.to_string()),
    }
}

/// Observed orders `log₂(e₃₂/e₆₄)` and `log₂(e₆₄/e₁₂₈)` of the FD oracle.
pub fn fd_orders(cs: &CrossSection, exact_k1_squared: f64) -> Result<(f64, f64)> {
    let mut errs = Vec::new();
    for n in [32, 64, 128] {
        let ev = fd_neumann_oracle(cs, n, 1)?;
        errs.push((ev[0] - exact_k1_squared).abs());
    }
    Ok(((errs[0] / errs[1]).log2(), (errs[1] / errs[2]).log2()))
}

pub fn membrane_oracle() -> PropertyReport {
    let cases = [(PI, PI, 1.0), (2.0, 1.0, (PI / 2.0).powi(2))];
    let mut ok = true;
    let mut notes = Vec::new();
    for (a, b, exact) in cases {
        match CrossSection::rectangle(a, b).and_then(|cs| fd_orders(&cs, exact)) {
            Ok((o1, o2)) => {
                ok &= (o1 - 2.0).abs() <= 0.2 && (o2 - 2.0).abs() <= 0.2;
                notes.push(format!("{a:.4}x{b:.4}: orders {o1:.4}, {o2:.4}"));
            }
            Err(e) => {
                ok = false;
                notes.push(e.to_string());
            }
        }
    }
    PropertyReport::new(7, "membrane_fd_oracle", ok, notes.join("; "))
}

fn rel_distance(rho: f64, h: f64, ref_rho: f64, ref_h: f64) -> f64 {
    ((rho - ref_rho).abs() / ref_rho).max((h - ref_h).abs() / ref_h)
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RoundTripSummary {
    pub cases: usize,
    pub successes: usize,
    pub ambiguous: usize,
    pub other_errors: usize,
    pub max_error: f64,
    /// Ambiguous outcomes whose candidates miss the true parameters.
    pub truth_missing: usize,
    pub branch_mismatch: usize,
    pub misassignment_undetected: usize,
}

fn admissible(cands: &[Candidate], tol: f64) -> Vec<Candidate> {
    cands.iter().filter(|c| c.disagreement <= tol).copied().collect()
}

/// Forward-generate each branch on the `(ρ, h)` grid, recover, and run the
/// other branch's solver on the same data.
pub fn round_trip_summary(opts: &RecoveryOptions, seed: u64) -> Result<RoundTripSummary> {
    let g = ContainerGeometry::finite(CrossSection::rectangle(PI, PI)?, 1.0)?;
    let mut s = RoundTripSummary::default();
    for rho in [1.02, 1.5, 2.0, 3.0, 5.0] {
        for i in 1..=9 {
            let h = i as f64 / 10.0;
            let strat = Stratification::new(rho, h)?;
            for branch in [RecoveryBranch::PlusSystem, RecoveryBranch::MinusSystem] {
                s.cases += 1;
                let m = synthesize_measurement(&g, &strat, Some(branch), 24, seed)?;
                let right = recover(&m, opts);
                let right_cands = match &right {
                    Ok(r) => {
                        s.successes += 1;
                        s.max_error = s.max_error.max(rel_distance(r.rho, r.h, rho, h));
                        if r.branch != branch && r.branch != RecoveryBranch::Coincident {
                            s.branch_mismatch += 1;
                        }
                        admissible(&r.candidates, opts.consistency_tol)
                    }
                    Err(Error::MultipleRoots { candidates, .. }) => {
                        s.ambiguous += 1;
                        let adm = admissible(candidates, opts.consistency_tol);
                        if !adm.iter().any(|c| rel_distance(c.rho, c.h, rho, h) <= 1e-8) {
                            s.truth_missing += 1;
                        }
                        adm
                    }
                    Err(_) => {
                        s.other_errors += 1;
                        vec![]
                    }
                };
                let wrong: Result<RecoveryResult> = match branch {
                    RecoveryBranch::PlusSystem => solve_minus_system(&m, opts),
                    _ => solve_plus_system(&m, opts),
                };
                if let Ok(w) = wrong {
                    let far_from_truth = rel_distance(w.rho, w.h, rho, h) >= 1e-4;
                    let far_from_right = right_cands.iter().all(|c| rel_distance(w.rho, w.h, c.rho, c.h) >= 1e-4);
                    if !(far_from_truth && far_from_right) {
                        s.misassignment_undetected += 1;
                    }
                }
            }
        }
    }
    Ok(s)
}

pub fn inverse_round_trip(opts: &RecoveryOptions, seed: u64) -> PropertyReport {
    match round_trip_summary(opts, seed) {
        Ok(s) => PropertyReport::new(
            8,
            "inverse_round_trip",
            s.successes > 0
                && s.max_error <= 1e-8
                && s.branch_mismatch == 0
                && s.truth_missing == 0
                && s.misassignment_undetected == 0,
            format!(
                "{} cases: {} recovered (max rel error {:.3e}), {} ambiguous (truth among candidates in {}), {} other errors; branch mismatches {}; undetected misassignments {}",
                s.cases,
                s.successes,
                s.max_error,
                s.ambiguous,
                s.ambiguous - s.truth_missing,
                s.other_errors,
                s.branch_mismatch,
                s.misassignment_undetected
            ),
        ),
        Err(e) => PropertyReport::new(8, "inverse_round_trip", false, e.to_string()),
    }
}

fn next_mode_elevation(g: &ContainerGeometry, n: usize, seed: u64) -> Result<Vec<ElevationSample>> {
    let md = MembraneData::from_cross_section(&g.cross_section)?;
    let mode = g.cross_section.mode(md.next_modes[0])?;
    Ok(crate::inverse::sample_points(&g.cross_section, n, seed)?
        .into_iter()
        .map(|p| ElevationSample(p[0], p[1], mode.value(p)))
        .collect())
}

/// Counts `(cases, unique answers)` over data with
/// `ν₁k_N/k₁ <= ν_Nk₁/k_N`, the equality included.
pub fn degenerate_regime_unique_answers(opts: &RecoveryOptions, seed: u64) -> Result<(usize, usize)> {
    let mut cases = 0;
    let mut unique = 0;
    for cs in [CrossSection::rectangle(PI, PI)?, CrossSection::disc(1.0)?] {
        let g = ContainerGeometry::finite(cs, 1.0)?;
        let elevation = next_mode_elevation(&g, 24, seed)?;
        let md = MembraneData::from_cross_section(&g.cross_section)?;
        let ratio = md.kn_squared / md.k1_squared;
        let (w1, wn) = (md.k1() * md.k1().tanh(), md.kn() * md.kn().tanh());
        for f1 in lin_space(0.05, 0.95, 10) {
            let nu1 = f1 * w1;
            let lo = nu1 * ratio;
            if !(lo < wn) {
                continue;
            }
            for f in lin_space(0.0, 0.999, 10) {
                let nun = if f == 0.0 { lo } else { lo + f * (wn - lo) };
                let m = Measurement::new(nu1, nun, g.clone(), elevation.clone())?;
                cases += 1;
                if recover(&m, opts).is_ok() || solve_minus_system(&m, opts).is_ok() {
                    unique += 1;
                }
            }
        }
    }
    Ok((cases, unique))
}

/// Selected system for natural (unforced) data in the two regimes:
/// `ρ` near 1 must select the minus system; `ρ` inside
/// `(1 + 2k₁/k_N, 1 + 2k_N/k₁)` with `h = d/2` and deep fluid the plus one.
pub fn regime_selection(opts: &RecoveryOptions, seed: u64) -> Result<Vec<(String, RecoveryBranch, RecoveryBranch)>> {
    let mut out = Vec::new();
    for cs in [CrossSection::rectangle(PI, PI)?, CrossSection::disc(1.0)?] {
        let shallow = ContainerGeometry::finite(cs.clone(), 1.0)?;
        for rho in [1.01, 1.02, 1.05] {
            for h in [0.2, 0.4, 0.6, 0.8] {
                let s = Stratification::new(rho, h)?;
                let m = synthesize_measurement(&shallow, &s, None, 24, seed)?;
                let (_, b) = select_system(&m, opts)?;
                out.push((format!("{cs:?} rho={rho} h={h} d=1"), RecoveryBranch::MinusSystem, b));
            }
        }
        let deep = ContainerGeometry::finite(cs.clone(), 10.0)?;
        let md = MembraneData::from_cross_section(&cs)?;
        let (lo, hi) = (1.0 + 2.0 * md.k1() / md.kn(), 1.0 + 2.0 * md.kn() / md.k1());
        for frac in [0.25, 0.5, 0.75] {
            let rho = lo + frac * (hi - lo);
            let s = Stratification::new(rho, 5.0)?;
            if natural_second_branch(&deep, &s, &md)? != RecoveryBranch::PlusSystem {
                return Err(Error::NumericalFault(format!("rho={rho} is not in the plus regime")));
            }
            let m = synthesize_measurement(&deep, &s, None, 24, seed)?;
            let (_, b) = select_system(&m, opts)?;
            out.push((format!("{cs:?} rho={rho:.4} h=5 d=10"), RecoveryBranch::PlusSystem, b));
        }
    }
    Ok(out)
}

pub fn solvability_diagnostics(opts: &RecoveryOptions, seed: u64) -> PropertyReport {
    let outcome = (|| -> Result<(bool, String)> {
        let (cases, unique) = degenerate_regime_unique_answers(opts, seed)?;
        let sel = regime_selection(opts, seed)?;
        let wrong: Vec<&String> = sel.iter().filter(|(_, want, got)| want != got).map(|(n, ..)| n).collect();
        Ok((
            cases > 0 && unique == 0 && wrong.is_empty(),
            format!(
                "degenerate-regime inputs: {cases}, unique answers {unique}; regime selections: {} of {} correct{}",
                sel.len() - wrong.len(),
                sel.len(),
                wrong.first().map(|w| format!(", first wrong {w}")).unwrap_or_default()
            ),
        ))
    })();
    match outcome {
        Ok((ok, d)) => PropertyReport::new(9, "solvability_diagnostics", ok, d),
        Err(e) => PropertyReport::new(9, "solvability_diagnostics", false, e.to_string()),
    }
}

pub fn infinite_depth(opts: &RecoveryOptions, seed: u64) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = 0;
    for _ in 0..100 {
        let k = (0.01f64.ln() + (1e4f64).ln() * rng.random::<f64>()).exp();
        let rho = 1.0 + 49.0 * rng.random::<f64>() + 1e-9;
        let h = 10.0 * rng.random::<f64>() + 1e-9;
        match Stratification::new(rho, h).and_then(|s| infinite_depth_pair(k, &s)) {
            Ok(e) if e.nu == k => {}
            _ => mismatches += 1,
        }
    }
    let refused = (|| -> Result<bool> {
        let g = ContainerGeometry::finite(CrossSection::rectangle(PI, PI)?, 1.0)?;
        let mut m = synthesize_measurement(&g, &Stratification::new(2.0, 0.3)?, None, 24, seed)?;
        m.geometry.depth = Depth::Infinite;
        Ok(matches!(recover(&m, opts), Err(Error::InfiniteDepth)))
    })()
    .unwrap_or(false);
    PropertyReport::new(
        10,
        "infinite_depth_degeneracy",
        mismatches == 0 && refused,
        format!("100 samples, {mismatches} with nu != k; recovery refused: {refused}"),
    )
}

/// Worst relative errors of `U′` and `U″` against five-point central
/// differences (steps `1e-4 d` and `1e-3 d`) at 1000 random points in
/// `(0.05d, 0.95d)`. Errors are relative to
/// `max(|exact|, 1e-3 · max over a 201-point scan)`.
///
/// `U` is a difference of two terms that nearly cancel, so the round-off of
/// a three-point second difference alone reaches 1e-5 of `U″` on some
/// inputs; the five-point stencils keep the oracle well below 1e-6.
pub fn derivative_errors(seed: u64) -> Result<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = (0.0f64, 0.0f64);
    for _ in 0..10 {
        let cs = if rng.random::<bool>() { CrossSection::rectangle(PI, PI)? } else { CrossSection::disc(1.0)? };
        let d = 0.5 + 1.5 * rng.random::<f64>();
        let rho = 1.05 + 3.95 * rng.random::<f64>();
        let h = d * (0.1 + 0.8 * rng.random::<f64>());
        let branch = if rng.random::<bool>() { RecoveryBranch::PlusSystem } else { RecoveryBranch::MinusSystem };
        let g = ContainerGeometry::finite(cs, d)?;
        let m = synthesize_measurement(&g, &Stratification::new(rho, h)?, Some(branch), 8, seed)?;
        let mut scale = (0.0f64, 0.0f64);
        for i in 0..=200 {
            let (a, b) = u_derivatives(d * i as f64 / 200.0, &m)?;
            scale = (scale.0.max(a.abs()), scale.1.max(b.abs()));
        }
        for _ in 0..100 {
            let x = d * (0.05 + 0.9 * rng.random::<f64>());
            let (du, ddu) = u_derivatives(x, &m)?;
            let u = |t: f64| u_value(t, &m);
            let s1 = 1e-4 * d;
            let fd1 = (u(x - 2.0 * s1)? - 8.0 * u(x - s1)? + 8.0 * u(x + s1)? - u(x + 2.0 * s1)?) / (12.0 * s1);
            let s2 = 1e-3 * d;
            let fd2 = (-u(x - 2.0 * s2)? + 16.0 * u(x - s2)? - 30.0 * u(x)? + 16.0 * u(x + s2)? - u(x + 2.0 * s2)?)
                / (12.0 * s2 * s2);
            worst.0 = worst.0.max((fd1 - du).abs() / du.abs().max(1e-3 * scale.0));
            worst.1 = worst.1.max((fd2 - ddu).abs() / ddu.abs().max(1e-3 * scale.1));
        }
    }
    Ok(worst)
}

pub fn derivative_checks(seed: u64) -> PropertyReport {
    match derivative_errors(seed) {
        Ok((e1, e2)) => PropertyReport::new(
            11,
            "u_derivative_checks",
            e1 <= 1e-6 && e2 <= 1e-6,
            format!("1000 points: max rel error U' {e1:.3e}, U'' {e2:.3e}"),
        ),
        Err(e) => PropertyReport::new(11, "u_derivative_checks", false, e.to_string()),
    }
}

/// Interlacing `ν⁻ < ν^W < ν⁺` for every level enumerated on the square.
pub fn interlacing_across_spectrum() -> PropertyReport {
    let outcome = (|| -> Result<(usize, usize)> {
        let g = ContainerGeometry::finite(CrossSection::rectangle(PI, PI)?, 1.0)?;
        let s = Stratification::new(2.0, 0.5)?;
        let levels = membrane_spectrum(&g.cross_section, 400.0)?;
        let mut bad = 0;
        for l in &levels {
            let p = pair_at_depth(l.k(), 1.0, &s)?;
            let w = l.k() * l.k().tanh();
            if !(p.nu_minus < w && w < p.nu_plus) {
                bad += 1;
            }
        }
        Ok((levels.len(), bad))
    })();
    match outcome {
        Ok((n, bad)) => PropertyReport::new(2, "interlacing_across_spectrum", bad == 0, format!("{n} levels, {bad} violations")),
        Err(e) => PropertyReport::new(2, "interlacing_across_spectrum", false, e.to_string()),
    }
}

/// Every property, in criterion order.
pub fn run_suite(opts: &SuiteOptions) -> Vec<PropertyReport> {
    let r = &opts.recovery;
    vec![
        quadratic_residuals(),
        ordering_and_ranges(),
        interlacing_across_spectrum(),
        monotonicity_in_rho(opts.seed),
        large_k_asymptotics(),
        weyl_count_square(),
        rayleigh_on_eigenmodes(opts.quadrature_n),
        rayleigh_trial_pair(opts.quadrature_n),
        membrane_oracle(),
        inverse_round_trip(r, opts.seed),
        solvability_diagnostics(r, opts.seed),
        infinite_depth(r, opts.seed),
        derivative_checks(opts.seed),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stress_grid_size() {
        let g = stress_grid();
        assert!(g.len() >= 10_000);
        assert!(g.iter().all(|&(kd, hd, rho)| (0.1..=700.0 + 1e-9).contains(&kd)
            && (0.01..=0.99 + 1e-12).contains(&hd)
            && rho > 1.0
            && rho <= 50.0 + 1e-9));
    }

    #[test]
    fn strictness_rule() {
        assert!(strictly_below(1.0, 2.0, f64::NEG_INFINITY));
        assert!(strictly_below(1.0, 1.0, -2000.0));
        assert!(!strictly_below(1.0, 1.0, f64::NEG_INFINITY));
    }

    #[test]
    fn membrane_oracle_passes() {
        assert!(membrane_oracle().passed);
    }

    #[test]
    fn asymptotic_errors_shrink_after_the_first_doubling() {
        for rho in [2.0, 3.0, 5.0] {
            let e = asymptotic_errors(rho).unwrap();
            assert!(e[6].1 < 1e-6 && e[6].2 < 1e-6);
            assert!(e.windows(2).all(|w| w[1].1 < w[0].1 || w[1].1 == 0.0));
            assert!(e[1..].windows(2).all(|w| w[1].2 < w[0].2 || w[1].2 <= 4.0 * f64::EPSILON * 2.0));
            // the plus error grows on the first doubling
            assert!(e[1].2 > e[0].2);
        }
    }
}
