//! Recovery of `(ρ, h)` from the two smallest eigenvalues `ν₁ < ν_N` and a
//! sampled free-surface elevation.
//!
//! `ν₁ = ν₁⁽⁻⁾` always. The second eigenvalue is either `ν₁⁽⁺⁾` (same
//! membrane level, elevation in the span of the fundamental modes) or
//! `ν_N⁽⁻⁾` (next membrane level). The elevation decides which system is
//! solved:
//!
//! * plus system: closed form, `tanh k₁h = ν_Nν₁ / (k₁(ν_N + ν₁ − ν₁^W))`;
//! * minus system: a root of `U(h)` on `(0, d)` followed by a linear solve
//!   for `ρ − 1`.
//!
//! `U` is evaluated divided by `cosh k₁d cosh k_Nd`:
//!
//! ```text
//! U(h) = (ν₁/k₁)(ν₁^W − ν₁) G(k_N, ν_N, h) − (ν_N/k_N)(ν_N^W − ν_N) G(k₁, ν₁, h)
//! G(k, ν, h) = sinh k(d−h) (k sinh kh − ν cosh kh) / cosh kd
//! ```
//!
//! Every recovered pair is pushed back through the forward model. A
//! candidate is accepted only if it reproduces both measured eigenvalues on
//! the branches it claims. The minus system is often not uniquely solvable:
//! `U` commonly has two roots with `ρ > 1` that both reproduce the data, and
//! then every candidate is returned instead of a single answer.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::bessel::bisect;
use crate::dispersion::{pair_at_depth, ContainerGeometry, Stratification};
use crate::error::{Error, Result};
use crate::hyperbolic::{cosh_over_cosh, cosh_sinh_over_cosh_sum, sinh_over_cosh, sinh_sinh_over_cosh_sum};
use crate::membrane::{membrane_spectrum, CrossSection, MembraneMode, ModeId, Point};
use crate::modes::coefficients;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RecoveryOptions {
    /// Relative least-squares residual below which the elevation is taken
    /// to lie in the span of the fundamental modes.
    pub class_tol: f64,
    pub scan_n: usize,
    /// Maximum accepted disagreement of a recovered candidate.
    pub consistency_tol: f64,
    /// Relative band for `ν₁⁽⁺⁾ = ν_N⁽⁻⁾`.
    pub coincident_tol: f64,
    /// Relative band for `ν₁ = ν₁^W`.
    pub homogeneous_tol: f64,
}

impl Default for RecoveryOptions {
    fn default() -> Self {
        RecoveryOptions {
            class_tol: 1e-6,
            scan_n: 2048,
            consistency_tol: 1e-8,
            coincident_tol: 1e-9,
            homogeneous_tol: 1e-10,
        }
    }
}

impl RecoveryOptions {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("class_tol", self.class_tol),
            ("consistency_tol", self.consistency_tol),
            ("coincident_tol", self.coincident_tol),
            ("homogeneous_tol", self.homogeneous_tol),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
            }
        }
        if self.scan_n < 16 {
            return Err(Error::InvalidParameter(format!("scan_n must be >= 16, got {}", self.scan_n)));
        }
        Ok(())
    }
}

/// The two lowest membrane levels and their eigenfunction labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembraneData {
    pub k1_squared: f64,
    pub kn_squared: f64,
    /// `v₁, …, v_{N−1}`
    pub fundamental_modes: Vec<ModeId>,
    /// Eigenfunctions of `k_N²`.
    pub next_modes: Vec<ModeId>,
}

impl MembraneData {
    pub fn from_cross_section(cs: &CrossSection) -> Result<Self> {
        cs.validate()?;
        let limit = cs.provider_limit();
        let mut bound = match cs {
            CrossSection::Rectangle { side_a, side_b } => (PI / side_a.min(*side_b)).powi(2) * 2.5,
            CrossSection::Disc { radius } => (3.1 / radius).powi(2),
            CrossSection::Tabulated { .. } => limit,
        };
        loop {
            let levels = membrane_spectrum(cs, bound.min(limit))?;
            if levels.len() >= 2 {
                return Ok(MembraneData {
                    k1_squared: levels[0].k_squared,
                    kn_squared: levels[1].k_squared,
                    fundamental_modes: levels[0].mode_ids.clone(),
                    next_modes: levels[1].mode_ids.clone(),
                });
            }
            if bound >= limit {
                return Err(Error::InvalidParameter("cross-section has fewer than two membrane levels".into()));
            }
            bound *= 4.0;
        }
    }

    pub fn k1(&self) -> f64 {
        self.k1_squared.sqrt()
    }

    pub fn kn(&self) -> f64 {
        self.kn_squared.sqrt()
    }

    /// `N − 1`
    pub fn fundamental_multiplicity(&self) -> usize {
        self.fundamental_modes.len()
    }
}

/// One elevation sample `(x₁, x₂, value)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElevationSample(pub f64, pub f64, pub f64);

impl ElevationSample {
    pub fn point(&self) -> Point {
        [self.0, self.1]
    }

    pub fn value(&self) -> f64 {
        self.2
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub nu_1: f64,
    #[serde(alias = "nu_N")]
    pub nu_n: f64,
    pub geometry: ContainerGeometry,
    #[serde(default)]
    pub elevation: Vec<ElevationSample>,
    pub membrane: MembraneData,
}

impl Measurement {
    /// Membrane data are derived from the geometry.
    pub fn new(nu_1: f64, nu_n: f64, geometry: ContainerGeometry, elevation: Vec<ElevationSample>) -> Result<Self> {
        geometry.validate()?;
        let membrane = MembraneData::from_cross_section(&geometry.cross_section)?;
        Ok(Measurement { nu_1, nu_n, geometry, elevation, membrane })
    }

    pub fn validate(&self) -> Result<()> {
        self.geometry.validate()?;
        self.geometry.finite_depth()?;
        if !(self.nu_1 > 0.0) || !(self.nu_n > self.nu_1) || !self.nu_n.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "need 0 < nu_1 < nu_N, got nu_1 = {}, nu_N = {}",
                self.nu_1, self.nu_n
            )));
        }
        let md = &self.membrane;
        if !(md.k1_squared > 0.0) || !(md.kn_squared > md.k1_squared) {
            return Err(Error::InvalidParameter("need 0 < k1² < kN²".into()));
        }
        Ok(())
    }

    /// `ν₁^W = k₁ tanh k₁d`
    pub fn nu1_w(&self) -> Result<f64> {
        let k = self.membrane.k1();
        Ok(k * (k * self.geometry.finite_depth()?).tanh())
    }

    /// `ν_N^W = k_N tanh k_Nd`
    pub fn nun_w(&self) -> Result<f64> {
        let k = self.membrane.kn();
        Ok(k * (k * self.geometry.finite_depth()?).tanh())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ElevationVariant {
    InSpan,
    NotInSpan,
    Coincident,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElevationClass {
    pub variant: ElevationVariant,
    /// `‖e − Πe‖ / ‖e‖` for the projection onto the fundamental modes.
    pub projection_residual: f64,
    /// Least-squares coefficients on fundamental then next-level modes.
    pub coefficients: Vec<f64>,
}

fn design_matrix(samples: &[ElevationSample], modes: &[MembraneMode]) -> DMatrix<f64> {
    DMatrix::from_fn(samples.len(), modes.len(), |i, j| modes[j].value(samples[i].point()))
}

/// Classify samples against explicit mode evaluators.
pub fn classify_samples(
    samples: &[ElevationSample],
    fundamental: &[MembraneMode],
    next: &[MembraneMode],
    class_tol: f64,
) -> Result<ElevationClass> {
    let p_fund = fundamental.len();
    let all: Vec<MembraneMode> = fundamental.iter().chain(next).copied().collect();
    let needed = (p_fund + 2).max(all.len());
    if samples.len() < needed {
        return Err(Error::RankDeficient(format!(
            "{} elevation samples, at least {needed} required",
            samples.len()
        )));
    }
    let e = DVector::from_iterator(samples.len(), samples.iter().map(|s| s.value()));
    let norm = e.norm();
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::InvalidParameter("elevation is identically zero or not finite".into()));
    }

    let a_ext = design_matrix(samples, &all);
    let svd = a_ext.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if !(smin > 1e-10 * smax) {
        return Err(Error::RankDeficient(format!(
            "sample points do not separate the modes (singular value ratio {:e})",
            smin / smax
        )));
    }
    let coeffs = svd.solve(&e, 0.0).map_err(|m| Error::NumericalFault(m.to_string()))?;

    let a_fund = design_matrix(samples, fundamental);
    let c_fund = a_fund.clone().svd(true, true).solve(&e, 0.0).map_err(|m| Error::NumericalFault(m.to_string()))?;
    let residual = ((&e - &a_fund * c_fund).norm() / norm).clamp(0.0, 1.0);
    Ok(ElevationClass {
        variant: if residual <= class_tol { ElevationVariant::InSpan } else { ElevationVariant::NotInSpan },
        projection_residual: residual,
        coefficients: coeffs.iter().copied().collect(),
    })
}

/// Project the measured elevation onto `span{v₁, …, v_{N−1}}`.
pub fn classify_elevation(m: &Measurement, class_tol: f64) -> Result<ElevationClass> {
    let cs = &m.geometry.cross_section;
    let modes = |ids: &[ModeId]| ids.iter().map(|&id| cs.mode(id)).collect::<Result<Vec<_>>>();
    let fundamental = modes(&m.membrane.fundamental_modes)?;
    let next = modes(&m.membrane.next_modes)?;
    for s in &m.elevation {
        if !cs.contains(s.point())? {
            return Err(Error::PointOutsideDomain(s.0, s.1));
        }
    }
    classify_samples(&m.elevation, &fundamental, &next, class_tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecoveryBranch {
    PlusSystem,
    MinusSystem,
    Coincident,
    Homogeneous,
}

/// Outcome of the necessary conditions for a unique root of `U`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolvabilityVerdict {
    /// Both inequalities hold: `U(0) < 0 < U(d⁻)`.
    NcSatisfied,
    /// `ν₁k_N/k₁ − ν_Nk₁/k_N <= 0`: no root or at least two.
    DegenerateRegime,
    /// `ν_N^Wν₁ = ν_Nν₁^W`: `U(0) = 0`, a unique interior root is impossible.
    DegenerateOrigin,
    /// First inequality holds but `U(0) > 0`: the root count is even.
    PositiveOrigin,
    /// `ν_N` outside `(ν₁, ν_N^W)`.
    OutsideWindow,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NecessaryConditions {
    pub nc_first: bool,
    pub nc_second: bool,
    /// `ν₁k_N/k₁ − ν_Nk₁/k_N`
    pub first_margin: f64,
    /// `ν_N^Wν₁ − ν_Nν₁^W`
    pub second_margin: f64,
    /// Scaled `U(0)`.
    pub u_at_0: f64,
    pub verdict: SolvabilityVerdict,
}

/// Relative band inside which a margin counts as an equality.
const EQUALITY_BAND: f64 = 1e-12;

pub fn necessary_conditions(m: &Measurement) -> Result<NecessaryConditions> {
    let (k1, kn) = (m.membrane.k1(), m.membrane.kn());
    let (nu1, nun) = (m.nu_1, m.nu_n);
    let (w1, wn) = (m.nu1_w()?, m.nun_w()?);
    let a = nu1 * kn / k1;
    let b = nun * k1 / kn;
    let first_margin = a - b;
    let second_margin = wn * nu1 - nun * w1;
    let first_eq = first_margin.abs() <= EQUALITY_BAND * a.max(b);
    let second_eq = second_margin.abs() <= EQUALITY_BAND * (wn * nu1).max(nun * w1);
    let nc_first = first_margin > 0.0 && !first_eq;
    let nc_second = second_margin < 0.0 && !second_eq;
    let verdict = if !(nu1 < nun && nun < wn) {
        SolvabilityVerdict::OutsideWindow
    } else if !nc_first {
        SolvabilityVerdict::DegenerateRegime
    } else if second_eq {
        SolvabilityVerdict::DegenerateOrigin
    } else if !nc_second {
        SolvabilityVerdict::PositiveOrigin
    } else {
        SolvabilityVerdict::NcSatisfied
    };
    Ok(NecessaryConditions {
        nc_first,
        nc_second,
        first_margin,
        second_margin,
        u_at_0: second_margin * nu1 * nun / (k1 * kn),
        verdict,
    })
}

/// `G(k, ν, h)` and its first two `h`-derivatives, all divided by `cosh kd`.
fn g_terms(k: f64, nu: f64, d: f64, h: f64) -> (f64, f64, f64) {
    let (kh, kl) = (k * h, k * (d - h));
    let g = k * sinh_sinh_over_cosh_sum(kh, kl) - nu * cosh_sinh_over_cosh_sum(kh, kl);
    let z = k * (d - 2.0 * h);
    let (sc, cc) = (sinh_over_cosh(z, k * d), cosh_over_cosh(z, k * d));
    let g1 = k * (k * sc + nu * cc);
    let g2 = -2.0 * k * k * (k * cc + nu * sc);
    (g, g1, g2)
}

struct UCoeffs {
    k1: f64,
    kn: f64,
    nu1: f64,
    nun: f64,
    /// `(ν₁/k₁)(ν₁^W − ν₁)`
    c1: f64,
    /// `(ν_N/k_N)(ν_N^W − ν_N)`
    cn: f64,
    d: f64,
}

impl UCoeffs {
    fn new(m: &Measurement) -> Result<Self> {
        let d = m.geometry.finite_depth()?;
        let (k1, kn) = (m.membrane.k1(), m.membrane.kn());
        Ok(UCoeffs {
            k1,
            kn,
            nu1: m.nu_1,
            nun: m.nu_n,
            c1: m.nu_1 / k1 * (m.nu1_w()? - m.nu_1),
            cn: m.nu_n / kn * (m.nun_w()? - m.nu_n),
            d,
        })
    }

    fn all(&self, h: f64) -> (f64, f64, f64) {
        let (g1, g1p, g1pp) = g_terms(self.k1, self.nu1, self.d, h);
        let (gn, gnp, gnpp) = g_terms(self.kn, self.nun, self.d, h);
        (
            self.c1 * gn - self.cn * g1,
            self.c1 * gnp - self.cn * g1p,
            self.c1 * gnpp - self.cn * g1pp,
        )
    }

    fn value(&self, h: f64) -> f64 {
        self.all(h).0
    }

    /// `ρ − 1` from the equation for level `j`.
    fn rho_minus_one(&self, h: f64) -> (f64, f64) {
        let g1 = g_terms(self.k1, self.nu1, self.d, h).0;
        let gn = g_terms(self.kn, self.nun, self.d, h).0;
        (self.c1 / g1, self.cn / gn)
    }
}

/// Scaled `U(h)`; exactly zero at `h = d`.
pub fn u_value(h: f64, m: &Measurement) -> Result<f64> {
    Ok(UCoeffs::new(m)?.value(h))
}

/// Scaled `(U′(h), U″(h))`.
pub fn u_derivatives(h: f64, m: &Measurement) -> Result<(f64, f64)> {
    let (_, u1, u2) = UCoeffs::new(m)?.all(h);
    Ok((u1, u2))
}

/// One recovered `(ρ, h)` with its self-consistency scores.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub rho: f64,
    pub h: f64,
    /// Relative disagreement of the two `ρ` formulas.
    pub rho_consistency: f64,
    /// Largest relative mismatch between the measured eigenvalues and those
    /// of the recovered fluid on the claimed branches.
    pub forward_residual: f64,
    /// Relative amount by which `ν_N` exceeds the competing candidate for
    /// the second eigenvalue (0 when `ν_N` is the true second eigenvalue of
    /// the recovered fluid). Reported only.
    pub ordering_violation: f64,
    /// `max(rho_consistency, forward_residual)`
    pub disagreement: f64,
}

fn score(m: &Measurement, rho: f64, h: f64, rho_consistency: f64, plus: bool) -> Candidate {
    let d = m.geometry.finite_depth().unwrap_or(f64::NAN);
    let mut c = Candidate {
        rho,
        h,
        rho_consistency,
        forward_residual: f64::INFINITY,
        ordering_violation: f64::INFINITY,
        disagreement: f64::INFINITY,
    };
    let Ok(strat) = Stratification::new(rho, h) else { return c };
    if !(h < d) {
        return c;
    }
    let (Ok(p1), Ok(pn)) = (pair_at_depth(m.membrane.k1(), d, &strat), pair_at_depth(m.membrane.kn(), d, &strat))
    else {
        return c;
    };
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs();
    let (second, competitor) = if plus { (p1.nu_plus, pn.nu_minus) } else { (pn.nu_minus, p1.nu_plus) };
    c.forward_residual = rel(p1.nu_minus, m.nu_1).max(rel(second, m.nu_n));
    c.ordering_violation = ((m.nu_n - competitor) / m.nu_n).max(0.0);
    c.disagreement = c.rho_consistency.max(c.forward_residual);
    c
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub nc_first: bool,
    pub nc_second: bool,
    #[serde(rename = "U_at_0")]
    pub u_at_0: f64,
    pub root_count_estimate: usize,
    pub rho_consistency: f64,
    pub forward_residual: f64,
    pub verdict: SolvabilityVerdict,
    /// Whether `U″ < 0` on the scan or `U′` changes sign once (minus system).
    pub uniqueness_sufficient: Option<bool>,
    pub classification: Option<ElevationClass>,
    /// Outcome of the other system in the coincident case.
    pub cross_check: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecoveryResult {
    pub rho: f64,
    pub h: f64,
    pub branch: RecoveryBranch,
    pub diagnostics: Diagnostics,
    pub candidates: Vec<Candidate>,
}

fn base_diagnostics(nc: &NecessaryConditions) -> Diagnostics {
    Diagnostics {
        nc_first: nc.nc_first,
        nc_second: nc.nc_second,
        u_at_0: nc.u_at_0,
        root_count_estimate: 0,
        rho_consistency: f64::NAN,
        forward_residual: f64::NAN,
        verdict: nc.verdict,
        uniqueness_sufficient: None,
        classification: None,
        cross_check: None,
    }
}

/// Closed-form plus system: `ν₁ = ν₁⁽⁻⁾`, `ν_N = ν₁⁽⁺⁾`.
pub fn solve_plus_system(m: &Measurement, opts: &RecoveryOptions) -> Result<RecoveryResult> {
    m.validate()?;
    let d = m.geometry.finite_depth()?;
    let k1 = m.membrane.k1();
    let (nu1, nun, w1) = (m.nu_1, m.nu_n, m.nu1_w()?);
    let upper = (k1 * d).tanh();
    let denom = k1 * (nun + nu1 - w1);
    let z = nun * nu1 / denom;
    if !(denom > 0.0) || !(z > 0.0 && z < upper) {
        return Err(Error::AdmissibilityViolation { z, upper });
    }
    let h = z.atanh() / k1;
    let (kh, kl) = (k1 * h, k1 * (d - h));
    let t1 = nun * nu1 / (k1 * k1 * sinh_sinh_over_cosh_sum(kh, kl));
    let t2 = ((nun + nu1) / k1 - upper) / cosh_sinh_over_cosh_sum(kh, kl);
    let rho = 1.0 + t1;
    let rho_consistency = ((1.0 + t2) - rho).abs() / rho;
    let cand = score(m, rho, h, rho_consistency, true);
    let nc = necessary_conditions(m)?;
    let mut diag = base_diagnostics(&nc);
    diag.root_count_estimate = 1;
    diag.rho_consistency = rho_consistency;
    diag.forward_residual = cand.forward_residual;
    if !(cand.disagreement <= opts.consistency_tol) {
        return Err(Error::InconsistentRho { disagreement: cand.disagreement, candidate: Box::new(cand) });
    }
    Ok(RecoveryResult { rho, h, branch: RecoveryBranch::PlusSystem, diagnostics: diag, candidates: vec![cand] })
}

/// Sign-change brackets of `U` on the grid `h_i = i d / n`, `i = 0..n`.
fn brackets(u: &UCoeffs, n: usize) -> Vec<(f64, f64)> {
    let d = u.d;
    let mut out = Vec::new();
    let mut prev_h = 0.0;
    let mut prev = u.value(0.0);
    for i in 1..n {
        let h = d * i as f64 / n as f64;
        let v = u.value(h);
        if v == 0.0 {
            out.push((h, h));
        } else if prev != 0.0 && (v > 0.0) != (prev > 0.0) {
            out.push((prev_h, h));
        }
        prev_h = h;
        prev = v;
    }
    out
}

const MAX_SCAN_N: usize = 1 << 20;

/// Root-finding minus system: `ν₁ = ν₁⁽⁻⁾`, `ν_N = ν_N⁽⁻⁾`.
pub fn solve_minus_system(m: &Measurement, opts: &RecoveryOptions) -> Result<RecoveryResult> {
    m.validate()?;
    opts.validate()?;
    let nc = necessary_conditions(m)?;
    let (w1, wn) = (m.nu1_w()?, m.nun_w()?);
    if !(m.nu_1 < w1) || !(m.nu_n < wn) {
        return Err(Error::OutsideWindow(format!(
            "need nu_1 < nu_1^W = {w1} and nu_N < nu_N^W = {wn}, got nu_1 = {}, nu_N = {}",
            m.nu_1, m.nu_n
        )));
    }
    let u = UCoeffs::new(m)?;
    let d = u.d;

    let mut n = opts.scan_n;
    let mut found = brackets(&u, n);
    let mut stable = 0;
    while stable < 2 && n < MAX_SCAN_N {
        n *= 2;
        let next = brackets(&u, n);
        stable = if next.len() == found.len() { stable + 1 } else { 0 };
        found = next;
    }

    // sufficiency: U″ < 0 throughout, or a single sign change of U′
    let mut all_concave = true;
    let mut du_changes = 0;
    let mut prev_du = f64::NAN;
    for i in 0..=opts.scan_n {
        let h = d * i as f64 / opts.scan_n as f64;
        let (_, du, ddu) = u.all(h);
        all_concave &= ddu < 0.0;
        if prev_du.is_finite() && du != 0.0 && prev_du != 0.0 && (du > 0.0) != (prev_du > 0.0) {
            du_changes += 1;
        }
        prev_du = du;
    }

    let candidates: Vec<Candidate> = found
        .iter()
        .map(|&(lo, hi)| {
            let h = if lo == hi { lo } else { bisect(|x| u.value(x), lo, hi, 0.0, 1e-12 * d) };
            let (r1, rn) = u.rho_minus_one(h);
            let rho = 1.0 + r1;
            score(m, rho, h, ((1.0 + rn) - rho).abs() / rho.abs(), false)
        })
        .collect();
    // roots with ρ <= 1 or a failed forward check are not solutions
    let admissible: Vec<Candidate> =
        candidates.iter().filter(|c| c.disagreement <= opts.consistency_tol).copied().collect();

    let mut diag = base_diagnostics(&nc);
    diag.root_count_estimate = candidates.len();
    diag.uniqueness_sufficient = Some(all_concave || du_changes == 1);
    if candidates.is_empty() {
        return Err(Error::NoRoot { verdict: nc.verdict });
    }
    // outside the NC regime the root count is even or zero, so a single
    // resolved root means another one was missed
    if nc.verdict != SolvabilityVerdict::NcSatisfied || admissible.len() > 1 {
        return Err(Error::MultipleRoots { candidates, verdict: nc.verdict });
    }
    let Some(&cand) = admissible.first() else {
        let best = candidates.iter().copied().min_by(|a, b| a.disagreement.total_cmp(&b.disagreement)).unwrap();
        return Err(Error::InconsistentRho { disagreement: best.disagreement, candidate: Box::new(best) });
    };
    diag.rho_consistency = cand.rho_consistency;
    diag.forward_residual = cand.forward_residual;
    Ok(RecoveryResult { rho: cand.rho, h: cand.h, branch: RecoveryBranch::MinusSystem, diagnostics: diag, candidates })
}

fn describe(r: &Result<RecoveryResult>) -> String {
    match r {
        Ok(x) => format!("ok rho={:.17e} h={:.17e}", x.rho, x.h),
        Err(e) => format!("{}: {e}", e.kind()),
    }
}

/// Elevation class and the system it selects.
pub fn select_system(m: &Measurement, opts: &RecoveryOptions) -> Result<(ElevationClass, RecoveryBranch)> {
    let class = classify_elevation(m, opts.class_tol)?;
    let branch = match class.variant {
        ElevationVariant::InSpan => RecoveryBranch::PlusSystem,
        _ => RecoveryBranch::MinusSystem,
    };
    Ok((class, branch))
}

/// Classify the elevation and solve the matching system.
pub fn recover(m: &Measurement, opts: &RecoveryOptions) -> Result<RecoveryResult> {
    let d = m.geometry.finite_depth()?;
    m.validate()?;
    opts.validate()?;
    let w1 = m.nu1_w()?;
    let nc = necessary_conditions(m)?;
    if (m.nu_1 - w1).abs() <= opts.homogeneous_tol * w1 {
        let mut diag = base_diagnostics(&nc);
        diag.rho_consistency = 0.0;
        diag.forward_residual = 0.0;
        return Ok(RecoveryResult { rho: 1.0, h: d, branch: RecoveryBranch::Homogeneous, diagnostics: diag, candidates: vec![] });
    }
    if m.nu_1 > w1 {
        return Err(Error::InvalidParameter(format!("nu_1 = {} exceeds the homogeneous value {w1}", m.nu_1)));
    }
    let (class, _) = select_system(m, opts)?;
    let coincident = |r: &RecoveryResult| -> Result<bool> {
        let strat = Stratification::new(r.rho, r.h)?;
        let p1 = pair_at_depth(m.membrane.k1(), d, &strat)?;
        let pn = pair_at_depth(m.membrane.kn(), d, &strat)?;
        Ok((p1.nu_plus - pn.nu_minus).abs() <= opts.coincident_tol * m.nu_n)
    };

    let (mut result, other) = match class.variant {
        ElevationVariant::InSpan => {
            let r = solve_plus_system(m, opts)?;
            if coincident(&r)? {
                (r, Some(solve_minus_system(m, opts)))
            } else {
                (r, None)
            }
        }
        _ => {
            let r = solve_minus_system(m, opts)?;
            if coincident(&r)? {
                let plus = solve_plus_system(m, opts);
                match plus {
                    Ok(p) => (p, Some(Ok(r))),
                    Err(e) => (r, Some(Err(e))),
                }
            } else {
                (r, None)
            }
        }
    };
    let mut class = class;
    if let Some(o) = other {
        class.variant = ElevationVariant::Coincident;
        result.branch = RecoveryBranch::Coincident;
        result.diagnostics.cross_check = Some(describe(&o));
    }
    result.diagnostics.classification = Some(class);
    Ok(result)
}

/// Which eigenvalue is second smallest for a given fluid.
pub fn natural_second_branch(geom: &ContainerGeometry, strat: &Stratification, md: &MembraneData) -> Result<RecoveryBranch> {
    let d = geom.finite_depth()?;
    let p1 = pair_at_depth(md.k1(), d, strat)?;
    let pn = pair_at_depth(md.kn(), d, strat)?;
    Ok(if p1.nu_plus <= pn.nu_minus { RecoveryBranch::PlusSystem } else { RecoveryBranch::MinusSystem })
}

/// Uniformly distributed points in `D`.
pub fn sample_points(cs: &CrossSection, n: usize, seed: u64) -> Result<Vec<Point>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match cs {
        CrossSection::Rectangle { side_a, side_b } => {
            Ok((0..n).map(|_| [rng.random::<f64>() * side_a, rng.random::<f64>() * side_b]).collect())
        }
        CrossSection::Disc { radius } => Ok((0..n)
            .map(|_| {
                let r = radius * rng.random::<f64>().sqrt();
                let t = 2.0 * PI * rng.random::<f64>();
                [r * t.cos(), r * t.sin()]
            })
            .collect()),
        CrossSection::Tabulated { .. } => Err(Error::Unsupported("sampling a tabulated cross-section".into())),
    }
}

/// Forward-generate a measurement for `strat`. The second eigenvalue is
/// taken from `branch` (plus or minus system), or the true second
/// eigenvalue when `None`. The elevation is the free-surface trace of a
/// seeded random combination of the modes of the chosen eigenvalue.
pub fn synthesize_measurement(
    geom: &ContainerGeometry,
    strat: &Stratification,
    branch: Option<RecoveryBranch>,
    n_samples: usize,
    seed: u64,
) -> Result<Measurement> {
    let d = geom.finite_depth()?;
    strat.check_against(geom.depth)?;
    let md = MembraneData::from_cross_section(&geom.cross_section)?;
    let branch = match branch {
        Some(b @ (RecoveryBranch::PlusSystem | RecoveryBranch::MinusSystem)) => b,
        Some(b) => return Err(Error::InvalidParameter(format!("cannot synthesize {b:?} data"))),
        None => natural_second_branch(geom, strat, &md)?,
    };
    let p1 = pair_at_depth(md.k1(), d, strat)?;
    let (nu_n, k, ids) = match branch {
        RecoveryBranch::PlusSystem => (p1.nu_plus, md.k1(), &md.fundamental_modes),
        _ => (pair_at_depth(md.kn(), d, strat)?.nu_minus, md.kn(), &md.next_modes),
    };
    let profile = coefficients(nu_n, k, geom, strat, 1.0)?;
    let trace = profile.upper_profile(0.0);
    let cs = &geom.cross_section;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_e1e7);
    let weights: Vec<(MembraneMode, f64)> = ids
        .iter()
        .map(|&id| Ok((cs.mode(id)?, 0.5 + rng.random::<f64>())))
        .collect::<Result<_>>()?;
    let elevation = sample_points(cs, n_samples, seed)?
        .into_iter()
        .map(|p| {
            let v: f64 = weights.iter().map(|(mode, w)| w * mode.value(p)).sum();
            ElevationSample(p[0], p[1], trace * v)
        })
        .collect();
    Ok(Measurement { nu_1: p1.nu_minus, nu_n, geometry: geom.clone(), elevation, membrane: md })
}
