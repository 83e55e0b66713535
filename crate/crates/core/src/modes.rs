//! Eigenmode construction and variational checks on vertical cylinders.
//!
//! A two-layer mode is `u⁽¹⁾ = v(x)[A cosh k(y+h) + B sinh k(y+h)]` in the
//! upper layer and `u⁽²⁾ = v(x) C cosh k(y+d)` in the lower one, with `v` a
//! membrane eigenfunction.
//!
//! Integrals over `W₁ = D × (−h, 0)` and `W₂ = D × (−d, −h)` use a tensor
//! product of the cross-section rule and a composite Gauss rule in `y`.
//! Because every integrand is a product of an `x`-factor and a `y`-factor,
//! the tensor-product sum is evaluated as a product of the two partial sums;
//! the result is the same quadrature, in `O(n²)` rather than `O(n³)` work.
//! Gradients are analytic.

use serde::Serialize;

use crate::dispersion::{ContainerGeometry, Stratification};
use crate::error::{Error, Result};
use crate::membrane::{CrossSection, MembraneMode, ModeId, Point};
use crate::quadrature::{pairwise_sum, Rule1d};

/// Scale-free tolerance on the coupling-equation residual.
pub const COUPLING_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub nu: f64,
    pub k: f64,
    pub h: f64,
    pub d: f64,
}

impl ModeCoefficients {
    /// Scale-free residual of
    /// `A(k sinh kh − ν cosh kh) + C sinh k(d−h)(k cosh kh − ν sinh kh)`.
    pub fn coupling_residual(&self) -> f64 {
        let (k, nu, kh) = (self.k, self.nu, self.k * self.h);
        let (sh, ch) = (kh.sinh(), kh.cosh());
        let sl = (k * (self.d - self.h)).sinh();
        let r = self.a * (k * sh - nu * ch) + self.c * sl * (k * ch - nu * sh);
        let scale = self.a.abs() * (k * sh + nu * ch) + (self.c * sl).abs() * (k * ch + nu * sh);
        r / scale
    }

    pub fn upper_profile(&self, y: f64) -> f64 {
        let z = self.k * (y + self.h);
        self.a * z.cosh() + self.b * z.sinh()
    }

    pub fn upper_profile_dy(&self, y: f64) -> f64 {
        let z = self.k * (y + self.h);
        self.k * (self.a * z.sinh() + self.b * z.cosh())
    }

    pub fn lower_profile(&self, y: f64) -> f64 {
        self.c * (self.k * (y + self.d)).cosh()
    }

    pub fn lower_profile_dy(&self, y: f64) -> f64 {
        self.c * self.k * (self.k * (y + self.d)).sinh()
    }
}

/// `A` and `B` from `C` for an eigenvalue `ν` of wavenumber `k`.
pub fn coefficients(nu: f64, k: f64, geom: &ContainerGeometry, strat: &Stratification, c: f64) -> Result<ModeCoefficients> {
    let d = geom.finite_depth()?;
    strat.check_against(geom.depth)?;
    if !(nu > 0.0) || !(k > 0.0) {
        return Err(Error::InvalidParameter(format!("need nu > 0 and k > 0, got nu = {nu}, k = {k}")));
    }
    if c == 0.0 || !c.is_finite() {
        return Err(Error::InvalidParameter("C must be a nonzero real".into()));
    }
    if k * d > 700.0 {
        return Err(Error::InvalidParameter(format!("mode profiles overflow for kd = {} > 700", k * d)));
    }
    let h = strat.h;
    let kl = k * (d - h);
    let mc = ModeCoefficients {
        a: c * (kl.cosh() - (strat.rho - 1.0) * k * kl.sinh() / nu),
        b: c * kl.sinh(),
        c,
        nu,
        k,
        h,
        d,
    };
    let residual = mc.coupling_residual();
    if !(residual.abs() <= COUPLING_TOL) {
        return Err(Error::NotAnEigenvalue { nu, k, residual });
    }
    Ok(mc)
}

/// Potentials `(u⁽¹⁾, u⁽²⁾)` built from one membrane mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialPair {
    pub mode_id: ModeId,
    pub mode: MembraneMode,
    pub profile: ModeCoefficients,
}

impl PotentialPair {
    pub fn eigenmode(cs: &CrossSection, mode_id: ModeId, coeffs: ModeCoefficients) -> Result<Self> {
        let mode = cs.mode(mode_id)?;
        let k2 = mode.k_squared();
        if (k2 - coeffs.k * coeffs.k).abs() > 1e-9 * k2 {
            return Err(Error::InvalidParameter(format!(
                "mode {mode_id} has k² = {k2}, coefficients were built for k² = {}",
                coeffs.k * coeffs.k
            )));
        }
        Ok(PotentialPair { mode_id, mode, profile: coeffs })
    }

    /// The admissible pair `(ρ u, u)` with `u = v(x) cosh k(y+d)` a
    /// homogeneous-fluid sloshing mode.
    pub fn homogeneous_trial(cs: &CrossSection, mode_id: ModeId, d: f64, strat: &Stratification) -> Result<Self> {
        let mode = cs.mode(mode_id)?;
        let k = mode.k();
        let kl = k * (d - strat.h);
        let rho = strat.rho;
        Ok(PotentialPair {
            mode_id,
            mode,
            profile: ModeCoefficients {
                a: rho * kl.cosh(),
                b: rho * kl.sinh(),
                c: 1.0,
                nu: f64::NAN,
                k,
                h: strat.h,
                d,
            },
        })
    }

    pub fn upper_value(&self, x: Point, y: f64) -> f64 {
        self.mode.value(x) * self.profile.upper_profile(y)
    }

    pub fn lower_value(&self, x: Point, y: f64) -> f64 {
        self.mode.value(x) * self.profile.lower_profile(y)
    }

    pub fn upper_gradient(&self, x: Point, y: f64) -> [f64; 3] {
        let g = self.mode.gradient(x);
        let f = self.profile.upper_profile(y);
        [g[0] * f, g[1] * f, self.mode.value(x) * self.profile.upper_profile_dy(y)]
    }

    pub fn lower_gradient(&self, x: Point, y: f64) -> [f64; 3] {
        let g = self.mode.gradient(x);
        let f = self.profile.lower_profile(y);
        [g[0] * f, g[1] * f, self.mode.value(x) * self.profile.lower_profile_dy(y)]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Layer {
    Upper,
    Lower,
}

/// `u⁽¹⁾` for `−h <= y <= 0`, `u⁽²⁾` for `−d <= y < −h`.
pub fn evaluate_potentials(pp: &PotentialPair, cs: &CrossSection, x: Point, y: f64) -> Result<(Layer, f64)> {
    let (h, d) = (pp.profile.h, pp.profile.d);
    if !cs.contains(x)? || y > 0.0 || y < -d {
        return Err(Error::PointOutsideDomain(x[0], y));
    }
    Ok(if y >= -h {
        (Layer::Upper, pp.upper_value(x, y))
    } else {
        (Layer::Lower, pp.lower_value(x, y))
    })
}

struct HorizontalSums {
    mass: f64,
    stiffness: f64,
}

fn horizontal_sums(cs: &CrossSection, mode: &MembraneMode, n: usize) -> Result<HorizontalSums> {
    let rule = cs.domain_rule(n)?;
    let mass: Vec<f64> = rule.iter().map(|(p, w)| w * mode.value(*p).powi(2)).collect();
    let stiffness: Vec<f64> = rule
        .iter()
        .map(|(p, w)| {
            let g = mode.gradient(*p);
            w * (g[0] * g[0] + g[1] * g[1])
        })
        .collect();
    Ok(HorizontalSums { mass: pairwise_sum(&mass), stiffness: pairwise_sum(&stiffness) })
}

fn check_quadrature_n(n: usize) -> Result<()> {
    if n < 8 {
        return Err(Error::InvalidParameter(format!("quadrature_n must be >= 8, got {n}")));
    }
    Ok(())
}

fn layer_energy<F: Fn(f64) -> f64, G: Fn(f64) -> f64>(h: &HorizontalSums, rule: &Rule1d, f: F, df: G) -> f64 {
    h.stiffness * rule.integrate(|y| f(y).powi(2)) + h.mass * rule.integrate(|y| df(y).powi(2))
}

/// Two-layer Rayleigh quotient
/// `[∫_{W₁}|∇u⁽¹⁾|² + ρ∫_{W₂}|∇u⁽²⁾|²] / [∫_F (u⁽¹⁾)² + (ρ−1)⁻¹∫_I (ρu⁽²⁾ − u⁽¹⁾)²]`.
pub fn rayleigh_two_layer(pp: &PotentialPair, geom: &ContainerGeometry, strat: &Stratification, quadrature_n: usize) -> Result<f64> {
    check_quadrature_n(quadrature_n)?;
    let d = geom.finite_depth()?;
    let (h, rho) = (strat.h, strat.rho);
    let prof = &pp.profile;
    if (prof.d - d).abs() > 1e-12 * d || (prof.h - h).abs() > 1e-12 * d {
        return Err(Error::InvalidParameter("potential pair was built for a different geometry".into()));
    }
    let hs = horizontal_sums(&geom.cross_section, &pp.mode, quadrature_n)?;
    let upper = Rule1d::composite_gauss2(-h, 0.0, quadrature_n);
    let lower = Rule1d::composite_gauss2(-d, -h, quadrature_n);
    let e1 = layer_energy(&hs, &upper, |y| prof.upper_profile(y), |y| prof.upper_profile_dy(y));
    let e2 = layer_energy(&hs, &lower, |y| prof.lower_profile(y), |y| prof.lower_profile_dy(y));
    let jump = rho * prof.lower_profile(-h) - prof.upper_profile(-h);
    let denom = hs.mass * prof.upper_profile(0.0).powi(2) + hs.mass * jump * jump / (rho - 1.0);
    if !(denom > 0.0) {
        return Err(Error::ZeroDenominator);
    }
    Ok((e1 + rho * e2) / denom)
}

/// A homogeneous-fluid sloshing mode `amplitude · v(x) cosh k(y+d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneousMode {
    pub mode: MembraneMode,
    pub amplitude: f64,
    pub d: f64,
}

impl HomogeneousMode {
    pub fn new(cs: &CrossSection, mode_id: ModeId, d: f64, amplitude: f64) -> Result<Self> {
        Ok(HomogeneousMode { mode: cs.mode(mode_id)?, amplitude, d })
    }
}

/// Single-fluid Rayleigh quotient `∫_W |∇u|² / ∫_F u²`.
pub fn rayleigh_homogeneous(u: &HomogeneousMode, geom: &ContainerGeometry, quadrature_n: usize) -> Result<f64> {
    check_quadrature_n(quadrature_n)?;
    let d = geom.finite_depth()?;
    let k = u.mode.k();
    let hs = horizontal_sums(&geom.cross_section, &u.mode, quadrature_n)?;
    let rule = Rule1d::composite_gauss2(-d, 0.0, quadrature_n);
    let amp = u.amplitude;
    let energy = layer_energy(&hs, &rule, |y| amp * (k * (y + d)).cosh(), |y| amp * k * (k * (y + d)).sinh());
    let denom = hs.mass * (amp * (k * d).cosh()).powi(2);
    if !(denom > 0.0) {
        return Err(Error::ZeroDenominator);
    }
    Ok(energy / denom)
}

/// `(∫_F u_i⁽¹⁾u_j⁽¹⁾, ∫_I (ρu_i⁽²⁾−u_i⁽¹⁾)(ρu_j⁽²⁾−u_j⁽¹⁾))` by quadrature.
pub fn orthogonality_check(
    pi: &PotentialPair,
    pj: &PotentialPair,
    cs: &CrossSection,
    strat: &Stratification,
    quadrature_n: usize,
) -> Result<(f64, f64)> {
    check_quadrature_n(quadrature_n)?;
    let rule = cs.domain_rule(quadrature_n)?;
    let h = strat.h;
    let rho = strat.rho;
    let mut surface = Vec::with_capacity(rule.len());
    let mut interface = Vec::with_capacity(rule.len());
    for (p, w) in &rule {
        surface.push(w * pi.upper_value(*p, 0.0) * pj.upper_value(*p, 0.0));
        let ji = rho * pi.lower_value(*p, -h) - pi.upper_value(*p, -h);
        let jj = rho * pj.lower_value(*p, -h) - pj.upper_value(*p, -h);
        interface.push(w * ji * jj);
    }
    Ok((pairwise_sum(&surface), pairwise_sum(&interface)))
}

/// `∫_F u⁽¹⁾ dx` by quadrature.
pub fn surface_mean(pp: &PotentialPair, cs: &CrossSection, quadrature_n: usize) -> Result<f64> {
    let rule = cs.domain_rule(quadrature_n)?;
    let vals: Vec<f64> = rule.iter().map(|(p, w)| w * pp.upper_value(*p, 0.0)).collect();
    Ok(pairwise_sum(&vals))
}

/// `(y, profile)` samples of the vertical structure on `[−d, 0]`.
pub fn vertical_profile(coeffs: &ModeCoefficients, samples: usize) -> Vec<(f64, f64)> {
    let samples = samples.max(2);
    (0..samples)
        .map(|i| {
            let y = -coeffs.d + coeffs.d * i as f64 / (samples - 1) as f64;
            let v = if y >= -coeffs.h { coeffs.upper_profile(y) } else { coeffs.lower_profile(y) };
            (y, v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::{pair_at_depth, Depth};
    use std::f64::consts::PI;

    fn setup(rho: f64, h: f64) -> (ContainerGeometry, Stratification) {
        (
            ContainerGeometry::finite(CrossSection::rectangle(PI, PI).unwrap(), 1.0).unwrap(),
            Stratification::new(rho, h).unwrap(),
        )
    }

    #[test]
    fn coefficients_satisfy_coupling_and_scale_linearly() {
        let (g, s) = setup(2.0, 0.5);
        let p = pair_at_depth(1.0, 1.0, &s).unwrap();
        let c1 = coefficients(p.nu_minus, 1.0, &g, &s, 1.0).unwrap();
        assert!(c1.coupling_residual().abs() < 1e-10);
        let c2 = coefficients(p.nu_minus, 1.0, &g, &s, 2.0).unwrap();
        assert_eq!(c2.a, 2.0 * c1.a);
        assert_eq!(c2.b, 2.0 * c1.b);
        assert!(coefficients(p.nu_plus, 1.0, &g, &s, 1.0).is_ok());
        assert!(matches!(
            coefficients(0.5 * (p.nu_minus + p.nu_plus), 1.0, &g, &s, 1.0),
            Err(Error::NotAnEigenvalue { .. })
        ));
    }

    #[test]
    fn interface_near_bottom() {
        let (g, s) = setup(2.0, 1.0 - 1e-10);
        let p = pair_at_depth(1.0, 1.0, &s).unwrap();
        let c = coefficients(p.nu_plus, 1.0, &g, &s, 1.0).unwrap();
        assert!(c.b.abs() < 1e-9);
        assert!((c.a - 1.0).abs() < 1e-8);
    }

    #[test]
    fn boundary_and_coupling_conditions() {
        let (g, s) = setup(2.0, 0.4);
        let p = pair_at_depth(1.0, 1.0, &s).unwrap();
        for nu in [p.nu_minus, p.nu_plus] {
            let c = coefficients(nu, 1.0, &g, &s, 1.0).unwrap();
            assert_eq!(c.lower_profile_dy(-1.0), 0.0);
            let surf = c.upper_profile_dy(0.0) - nu * c.upper_profile(0.0);
            assert!(surf.abs() <= 1e-10 * c.upper_profile_dy(0.0).abs().max(nu * c.upper_profile(0.0).abs()));
            let (du, dl) = (c.upper_profile_dy(-0.4), c.lower_profile_dy(-0.4));
            assert!((du - dl).abs() <= 1e-14 * du.abs());
            // (ρ−1) u_y = ν (u⁽²⁾ − u⁽¹⁾) on the interface
            let lhs = (s.rho - 1.0) * dl;
            let rhs = nu * (c.lower_profile(-0.4) - c.upper_profile(-0.4));
            assert!((lhs - rhs).abs() < 1e-12 * lhs.abs().max(1.0));
        }
    }

    #[test]
    fn potentials_by_region() {
        let (g, s) = setup(2.0, 0.5);
        let p = pair_at_depth(1.0, 1.0, &s).unwrap();
        let c = coefficients(p.nu_minus, 1.0, &g, &s, 1.0).unwrap();
        let cs = &g.cross_section;
        let pp = PotentialPair::eigenmode(cs, ModeId::Rect { m: 1, n: 0 }, c).unwrap();
        assert_eq!(evaluate_potentials(&pp, cs, [0.3, 0.3], -0.2).unwrap().0, Layer::Upper);
        assert_eq!(evaluate_potentials(&pp, cs, [0.3, 0.3], -0.7).unwrap().0, Layer::Lower);
        assert!(evaluate_potentials(&pp, cs, [0.3, 0.3], 0.1).is_err());
        assert!(evaluate_potentials(&pp, cs, [0.3, 0.3], -1.1).is_err());
        // mode mismatch
        assert!(PotentialPair::eigenmode(cs, ModeId::Rect { m: 1, n: 1 }, c).is_err());
    }

    #[test]
    fn analytic_gradient_matches_finite_differences() {
        let (g, s) = setup(3.0, 0.3);
        let p = pair_at_depth(2f64.sqrt(), 1.0, &s).unwrap();
        let c = coefficients(p.nu_plus, 2f64.sqrt(), &g, &s, 0.7).unwrap();
        let pp = PotentialPair::eigenmode(&g.cross_section, ModeId::Rect { m: 1, n: 1 }, c).unwrap();
        let e = 1e-6;
        for (x, y, upper) in [([0.4, 1.1], -0.1, true), ([2.0, 0.2], -0.8, false)] {
            let f = |x: Point, y: f64| if upper { pp.upper_value(x, y) } else { pp.lower_value(x, y) };
            let grad = if upper { pp.upper_gradient(x, y) } else { pp.lower_gradient(x, y) };
            let fd = [
                (f([x[0] + e, x[1]], y) - f([x[0] - e, x[1]], y)) / (2.0 * e),
                (f([x[0], x[1] + e], y) - f([x[0], x[1] - e], y)) / (2.0 * e),
                (f(x, y + e) - f(x, y - e)) / (2.0 * e),
            ];
            for i in 0..3 {
                assert!((grad[i] - fd[i]).abs() < 1e-7, "{i}: {} vs {}", grad[i], fd[i]);
            }
        }
    }

    /// Eigenpair of the problem whose interface condition is
    /// `ρ(u⁽²⁾_y − ν u⁽²⁾) = u⁽¹⁾_y − ν u⁽¹⁾`, built independently of the
    /// dispersion module. Its eigenvalues are the stationary values of the
    /// two-layer quotient.
    fn weighted_interface_mode(k: f64, d: f64, rho: f64, h: f64, plus: bool) -> ModeCoefficients {
        let (sh, ch) = ((k * h).sinh(), (k * h).cosh());
        let (sl, cl) = ((k * (d - h)).sinh(), (k * (d - h)).cosh());
        let qa = rho * ch * cl + sh * sl;
        let qb = -k * rho * (sh * cl + ch * sl);
        let qc = (rho - 1.0) * k * k * sh * sl;
        let disc = (qb * qb - 4.0 * qa * qc).sqrt();
        let nu = if plus { (-qb + disc) / (2.0 * qa) } else { 2.0 * qc / (-qb + disc) };
        ModeCoefficients { a: rho * cl - (rho - 1.0) * k * sl / nu, b: sl, c: 1.0, nu, k, h, d }
    }

    #[test]
    fn quotient_is_stationary_at_weighted_interface_modes() {
        let (g, s) = setup(2.0, 0.5);
        for (id, k2) in [(ModeId::Rect { m: 1, n: 0 }, 1.0), (ModeId::Rect { m: 1, n: 2 }, 5.0)] {
            for plus in [false, true] {
                let mc = weighted_interface_mode(f64::sqrt(k2), 1.0, 2.0, 0.5, plus);
                let pp = PotentialPair { mode_id: id, mode: g.cross_section.mode(id).unwrap(), profile: mc };
                let r = rayleigh_two_layer(&pp, &g, &s, 64).unwrap();
                assert!((r - mc.nu).abs() < 1e-9 * mc.nu, "{r} vs {}", mc.nu);
            }
        }
    }

    #[test]
    fn rayleigh_converges_with_order_four() {
        let (g, s) = setup(2.0, 0.5);
        let k = 5f64.sqrt();
        let p = pair_at_depth(k, 1.0, &s).unwrap();
        let c = coefficients(p.nu_plus, k, &g, &s, 1.0).unwrap();
        let pp = PotentialPair::eigenmode(&g.cross_section, ModeId::Rect { m: 1, n: 2 }, c).unwrap();
        let r = |n| rayleigh_two_layer(&pp, &g, &s, n).unwrap();
        let (r8, r16, r32) = (r(8), r(16), r(32));
        let ratio = (r8 - r16) / (r16 - r32);
        assert!(ratio > 12.0 && ratio < 20.0, "ratio {ratio}");
    }

    #[test]
    fn trial_pair_beats_homogeneous_fundamental() {
        let (g, s) = setup(2.0, 0.5);
        let trial = PotentialPair::homogeneous_trial(&g.cross_section, ModeId::Rect { m: 1, n: 0 }, 1.0, &s).unwrap();
        let r = rayleigh_two_layer(&trial, &g, &s, 32).unwrap();
        assert!(r < 1f64.tanh());
    }

    #[test]
    fn homogeneous_quotient() {
        let g = ContainerGeometry::finite(CrossSection::rectangle(PI, PI).unwrap(), 1.0).unwrap();
        let u = HomogeneousMode::new(&g.cross_section, ModeId::Rect { m: 1, n: 0 }, 1.0, 1.0).unwrap();
        let r = rayleigh_homogeneous(&u, &g, 64).unwrap();
        assert!((r - 1f64.tanh()).abs() < 1e-6);
        let u3 = HomogeneousMode { amplitude: 3.0, ..u };
        assert!((rayleigh_homogeneous(&u3, &g, 64).unwrap() - r).abs() < 1e-14);
        assert!(rayleigh_homogeneous(&u, &g, 4).is_err());
        let inf = ContainerGeometry { depth: Depth::Infinite, ..g };
        assert!(rayleigh_homogeneous(&u, &inf, 16).is_err());
    }

    #[test]
    fn orthogonality() {
        let (g, s) = setup(2.0, 0.5);
        let cs = &g.cross_section;
        let p = pair_at_depth(1.0, 1.0, &s).unwrap();
        let c = coefficients(p.nu_minus, 1.0, &g, &s, 1.0).unwrap();
        let a = PotentialPair::eigenmode(cs, ModeId::Rect { m: 1, n: 0 }, c).unwrap();
        let b = PotentialPair::eigenmode(cs, ModeId::Rect { m: 0, n: 1 }, c).unwrap();
        let (fs, ip) = orthogonality_check(&a, &a, cs, &s, 32).unwrap();
        assert!(fs > 0.0 && ip > 0.0);
        let (fs, ip) = orthogonality_check(&a, &b, cs, &s, 32).unwrap();
        assert!(fs.abs() < 1e-9 && ip.abs() < 1e-9);
        assert!(surface_mean(&a, cs, 32).unwrap().abs() < 1e-9);
    }

    #[test]
    fn profile_samples() {
        let (g, s) = setup(2.0, 0.5);
        let p = pair_at_depth(1.0, 1.0, &s).unwrap();
        let c = coefficients(p.nu_minus, 1.0, &g, &s, 1.0).unwrap();
        let prof = vertical_profile(&c, 11);
        assert_eq!(prof.len(), 11);
        assert_eq!(prof[0].0, -1.0);
        assert_eq!(prof[10].0, 0.0);
        assert_eq!(prof[10].1, c.upper_profile(0.0));
    }
}
