//! Free-membrane (Neumann Laplacian) spectra of container cross-sections.
//!
//! Eigenfunctions are normalized so that `∫_D v² dx = |D|` and have zero
//! mean over `D`. Rectangles occupy `[0, a] × [0, b]`; discs are centred at
//! the origin.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::bessel::{bessel_j, bessel_j_prime, bessel_j_prime_zeros};
use crate::error::{Error, Result};
use crate::quadrature::Rule1d;

pub type Point = [f64; 2];

/// Relative tolerance below which two membrane eigenvalues are one level.
pub const MULTIPLICITY_REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Azimuth {
    Cos,
    Sin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModeId {
    Rect { m: u32, n: u32 },
    Disc { m: u32, s: u32, azimuth: Azimuth },
    Tabulated { level: usize, member: usize },
}

impl fmt::Display for ModeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModeId::Rect { m, n } => write!(f, "rect({m},{n})"),
            ModeId::Disc { m, s, azimuth } => {
                let a = match azimuth {
                    Azimuth::Cos => "cos",
                    Azimuth::Sin => "sin",
                };
                write!(f, "disc({m},{s},{a})")
            }
            ModeId::Tabulated { level, member } => write!(f, "tab({level},{member})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembraneEigenvalue {
    pub k_squared: f64,
    pub multiplicity: usize,
    #[serde(default)]
    pub mode_ids: Vec<ModeId>,
}

impl MembraneEigenvalue {
    pub fn k(&self) -> f64 {
        self.k_squared.sqrt()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CrossSection {
    Rectangle { side_a: f64, side_b: f64 },
    Disc { radius: f64 },
    Tabulated { entries: Vec<MembraneEigenvalue>, area: f64 },
}

impl CrossSection {
    pub fn rectangle(side_a: f64, side_b: f64) -> Result<Self> {
        let cs = CrossSection::Rectangle { side_a, side_b };
        cs.validate()?;
        Ok(cs)
    }

    pub fn disc(radius: f64) -> Result<Self> {
        let cs = CrossSection::Disc { radius };
        cs.validate()?;
        Ok(cs)
    }

    /// Tabulated spectrum from `(k², multiplicity)` pairs; mode ids are
    /// generated.
    pub fn tabulated(levels: &[(f64, usize)], area: f64) -> Result<Self> {
        let entries = levels
            .iter()
            .enumerate()
            .map(|(level, &(k_squared, multiplicity))| MembraneEigenvalue {
                k_squared,
                multiplicity,
                mode_ids: (0..multiplicity).map(|member| ModeId::Tabulated { level, member }).collect(),
            })
            .collect();
        let cs = CrossSection::Tabulated { entries, area };
        cs.validate()?;
        Ok(cs)
    }

    /// Fill in missing tabulated mode ids, then validate.
    pub fn normalized(self) -> Result<Self> {
        let cs = match self {
            CrossSection::Tabulated { mut entries, area } => {
                for (level, e) in entries.iter_mut().enumerate() {
                    if e.mode_ids.is_empty() {
                        e.mode_ids = (0..e.multiplicity).map(|member| ModeId::Tabulated { level, member }).collect();
                    }
                }
                CrossSection::Tabulated { entries, area }
            }
            other => other,
        };
        cs.validate()?;
        Ok(cs)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{name} must be positive and finite, got {v}")))
            }
        };
        match self {
            CrossSection::Rectangle { side_a, side_b } => {
                positive("side_a", *side_a)?;
                positive("side_b", *side_b)
            }
            CrossSection::Disc { radius } => positive("radius", *radius),
            CrossSection::Tabulated { entries, area } => {
                positive("area", *area)?;
                let mut prev = 0.0;
                for e in entries {
                    positive("tabulated k_squared", e.k_squared)?;
                    if e.k_squared <= prev {
                        return Err(Error::InvalidParameter(
                            "tabulated entries must be strictly increasing in k_squared".into(),
                        ));
                    }
                    if e.multiplicity == 0 || e.multiplicity != e.mode_ids.len() {
                        return Err(Error::InvalidParameter(format!(
                            "tabulated entry k_squared = {} has multiplicity {} but {} mode ids",
                            e.k_squared,
                            e.multiplicity,
                            e.mode_ids.len()
                        )));
                    }
                    prev = e.k_squared;
                }
                Ok(())
            }
        }
    }

    pub fn area(&self) -> f64 {
        match self {
            CrossSection::Rectangle { side_a, side_b } => side_a * side_b,
            CrossSection::Disc { radius } => PI * radius * radius,
            CrossSection::Tabulated { area, .. } => *area,
        }
    }

    /// Whether the closed region `D̄` contains `p` (with a relative slack of 1e-12).
    pub fn contains(&self, p: Point) -> Result<bool> {
        match self {
            CrossSection::Rectangle { side_a, side_b } => {
                let ea = 1e-12 * side_a;
                let eb = 1e-12 * side_b;
                Ok(p[0] >= -ea && p[0] <= side_a + ea && p[1] >= -eb && p[1] <= side_b + eb)
            }
            CrossSection::Disc { radius } => Ok(p[0].hypot(p[1]) <= radius * (1.0 + 1e-12)),
            CrossSection::Tabulated { .. } => Err(Error::Unsupported(
                "tabulated cross-sections carry no geometry".into(),
            )),
        }
    }

    /// Largest tabulated `k²`, or infinity for closed-form shapes.
    pub fn provider_limit(&self) -> f64 {
        match self {
            CrossSection::Tabulated { entries, .. } => entries.last().map_or(0.0, |e| e.k_squared),
            _ => f64::INFINITY,
        }
    }

    pub fn spectrum(&self, k_squared_max: f64) -> Result<Vec<MembraneEigenvalue>> {
        membrane_spectrum(self, k_squared_max)
    }

    /// Prepare an evaluator for one eigenfunction.
    pub fn mode(&self, id: ModeId) -> Result<MembraneMode> {
        match (self, id) {
            (CrossSection::Rectangle { side_a, side_b }, ModeId::Rect { m, n }) => {
                if m == 0 && n == 0 {
                    return Err(Error::InvalidParameter("rect(0,0) is the constant mode".into()));
                }
                let amp = (if m > 0 { 2.0f64 } else { 1.0 } * if n > 0 { 2.0 } else { 1.0 }).sqrt();
                Ok(MembraneMode::Rect {
                    wx: m as f64 * PI / side_a,
                    wy: n as f64 * PI / side_b,
                    amp,
                })
            }
            (CrossSection::Disc { radius }, ModeId::Disc { m, s, azimuth }) => {
                if s == 0 || (m == 0 && azimuth == Azimuth::Sin) {
                    return Err(Error::InvalidParameter(format!("invalid disc mode {id}")));
                }
                let z = disc_zero(m, s)?;
                let jm = bessel_j(m, z);
                let amp = if m == 0 {
                    1.0 / jm.abs()
                } else {
                    let mf = m as f64;
                    (2.0 / ((1.0 - mf * mf / (z * z)) * jm * jm)).sqrt()
                };
                Ok(MembraneMode::Disc {
                    m,
                    k: z / radius,
                    amp,
                    azimuth,
                })
            }
            (CrossSection::Tabulated { .. }, _) => Err(Error::Unsupported(
                "eigenfunction evaluation on a tabulated cross-section".into(),
            )),
            _ => Err(Error::InvalidParameter(format!("mode {id} does not belong to this cross-section"))),
        }
    }

    /// Tensor-product quadrature nodes and weights over `D` with `cells`
    /// cells per coordinate (Cartesian for rectangles, polar for discs).
    pub fn domain_rule(&self, cells: usize) -> Result<Vec<(Point, f64)>> {
        match self {
            CrossSection::Rectangle { side_a, side_b } => {
                let rx = Rule1d::composite_gauss2(0.0, *side_a, cells);
                let ry = Rule1d::composite_gauss2(0.0, *side_b, cells);
                let mut out = Vec::with_capacity(rx.nodes.len() * ry.nodes.len());
                for (&x, &wx) in rx.nodes.iter().zip(&rx.weights) {
                    for (&y, &wy) in ry.nodes.iter().zip(&ry.weights) {
                        out.push(([x, y], wx * wy));
                    }
                }
                Ok(out)
            }
            CrossSection::Disc { radius } => {
                let rr = Rule1d::composite_gauss2(0.0, *radius, cells);
                let rt = Rule1d::composite_gauss2(0.0, 2.0 * PI, cells);
                let mut out = Vec::with_capacity(rr.nodes.len() * rt.nodes.len());
                for (&r, &wr) in rr.nodes.iter().zip(&rr.weights) {
                    for (&t, &wt) in rt.nodes.iter().zip(&rt.weights) {
                        out.push(([r * t.cos(), r * t.sin()], wr * wt * r));
                    }
                }
                Ok(out)
            }
            CrossSection::Tabulated { .. } => Err(Error::Unsupported(
                "quadrature over a tabulated cross-section".into(),
            )),
        }
    }
}

/// `j'_{m,s}`, the `s`-th positive zero of `J'_m`.
pub fn disc_zero(m: u32, s: u32) -> Result<f64> {
    let x_max = m as f64 + (s as f64 + 1.0) * PI + 2.0;
    let zeros = bessel_j_prime_zeros(m, x_max)?;
    zeros
        .get(s as usize - 1)
        .copied()
        .ok_or_else(|| Error::NumericalFault(format!("missing Bessel derivative zero ({m}, {s})")))
}

/// A prepared, normalized membrane eigenfunction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MembraneMode {
    Rect { wx: f64, wy: f64, amp: f64 },
    Disc { m: u32, k: f64, amp: f64, azimuth: Azimuth },
}

impl MembraneMode {
    pub fn k_squared(&self) -> f64 {
        match *self {
            MembraneMode::Rect { wx, wy, .. } => wx * wx + wy * wy,
            MembraneMode::Disc { k, .. } => k * k,
        }
    }

    pub fn k(&self) -> f64 {
        self.k_squared().sqrt()
    }

    pub fn value(&self, p: Point) -> f64 {
        match *self {
            MembraneMode::Rect { wx, wy, amp } => amp * (wx * p[0]).cos() * (wy * p[1]).cos(),
            MembraneMode::Disc { m, k, amp, azimuth } => {
                let r = p[0].hypot(p[1]);
                let t = p[1].atan2(p[0]);
                let ang = match azimuth {
                    Azimuth::Cos => (m as f64 * t).cos(),
                    Azimuth::Sin => (m as f64 * t).sin(),
                };
                amp * bessel_j(m, k * r) * ang
            }
        }
    }

    pub fn gradient(&self, p: Point) -> [f64; 2] {
        match *self {
            MembraneMode::Rect { wx, wy, amp } => {
                let (sx, cx) = (wx * p[0]).sin_cos();
                let (sy, cy) = (wy * p[1]).sin_cos();
                [-amp * wx * sx * cy, -amp * wy * cx * sy]
            }
            MembraneMode::Disc { m, k, amp, azimuth } => {
                let r = p[0].hypot(p[1]);
                let mf = m as f64;
                if r < 1e-300 {
                    // only m = 1 has a nonzero gradient at the centre: v ≈ amp·(k/2)·(x or y)
                    return match (m, azimuth) {
                        (1, Azimuth::Cos) => [amp * k / 2.0, 0.0],
                        (1, Azimuth::Sin) => [0.0, amp * k / 2.0],
                        _ => [0.0, 0.0],
                    };
                }
                let t = p[1].atan2(p[0]);
                let (ang, dang) = match azimuth {
                    Azimuth::Cos => ((mf * t).cos(), -mf * (mf * t).sin()),
                    Azimuth::Sin => ((mf * t).sin(), mf * (mf * t).cos()),
                };
                let dr = amp * k * bessel_j_prime(m, k * r) * ang;
                let dt = amp * bessel_j(m, k * r) / r * dang;
                let (st, ct) = t.sin_cos();
                [dr * ct - dt * st, dr * st + dt * ct]
            }
        }
    }
}

/// Membrane eigenvalue `v(x)` for `mode_id` at `x`, checking the domain.
pub fn evaluate_mode(cs: &CrossSection, id: ModeId, x: Point) -> Result<f64> {
    let mode = cs.mode(id)?;
    if !cs.contains(x)? {
        return Err(Error::PointOutsideDomain(x[0], x[1]));
    }
    Ok(mode.value(x))
}

/// All eigenvalues of the mean-zero Neumann membrane problem in
/// `(0, k_squared_max]`, sorted, with coincident levels merged.
pub fn membrane_spectrum(cs: &CrossSection, k_squared_max: f64) -> Result<Vec<MembraneEigenvalue>> {
    if !(k_squared_max > 0.0) || !k_squared_max.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "k_squared_max must be positive and finite, got {k_squared_max}"
        )));
    }
    cs.validate()?;
    let limit = k_squared_max * (1.0 + MULTIPLICITY_REL_TOL);
    let mut raw: Vec<(f64, ModeId)> = Vec::new();
    match cs {
        CrossSection::Rectangle { side_a, side_b } => {
            let kmax = k_squared_max.sqrt();
            let m_max = (kmax * side_a / PI).floor() as u32 + 1;
            let n_max = (kmax * side_b / PI).floor() as u32 + 1;
            for m in 0..=m_max {
                let wx = m as f64 * PI / side_a;
                for n in 0..=n_max {
                    if m == 0 && n == 0 {
                        continue;
                    }
                    let wy = n as f64 * PI / side_b;
                    let k2 = wx * wx + wy * wy;
                    if k2 <= limit {
                        raw.push((k2, ModeId::Rect { m, n }));
                    }
                }
            }
        }
        CrossSection::Disc { radius } => {
            let zmax = k_squared_max.sqrt() * radius * (1.0 + MULTIPLICITY_REL_TOL);
            let mut m = 0u32;
            while (m as f64) <= zmax {
                for (i, z) in bessel_j_prime_zeros(m, zmax)?.into_iter().enumerate() {
                    let k2 = (z / radius).powi(2);
                    if k2 > limit {
                        continue;
                    }
                    let s = i as u32 + 1;
                    raw.push((k2, ModeId::Disc { m, s, azimuth: Azimuth::Cos }));
                    if m > 0 {
                        raw.push((k2, ModeId::Disc { m, s, azimuth: Azimuth::Sin }));
                    }
                }
                m += 1;
            }
        }
        CrossSection::Tabulated { entries, .. } => {
            return Ok(entries.iter().filter(|e| e.k_squared <= limit).cloned().collect());
        }
    }
    Ok(merge_levels(raw))
}

fn merge_levels(mut raw: Vec<(f64, ModeId)>) -> Vec<MembraneEigenvalue> {
    raw.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut out: Vec<MembraneEigenvalue> = Vec::new();
    for (k2, id) in raw {
        match out.last_mut() {
            Some(last) if (k2 - last.k_squared).abs() <= MULTIPLICITY_REL_TOL * last.k_squared => {
                last.mode_ids.push(id);
                last.multiplicity += 1;
            }
            _ => out.push(MembraneEigenvalue {
                k_squared: k2,
                multiplicity: 1,
                mode_ids: vec![id],
            }),
        }
    }
    for level in &mut out {
        level.mode_ids.sort();
    }
    out
}

fn neumann_1d_eigenvalues(length: f64, cells: usize) -> Vec<f64> {
    let h = length / cells as f64;
    let inv_h2 = 1.0 / (h * h);
    let mut a = DMatrix::<f64>::zeros(cells, cells);
    for i in 0..cells {
        let neighbours = (i > 0) as usize + (i + 1 < cells) as usize;
        a[(i, i)] = neighbours as f64 * inv_h2;
        if i + 1 < cells {
            a[(i, i + 1)] = -inv_h2;
            a[(i + 1, i)] = -inv_h2;
        }
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(a).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Lowest `count` nonzero eigenvalues of the cell-centred 5-point Neumann
/// Laplacian on a rectangle with `grid_n × grid_n` cells.
///
/// The 2D operator is the Kronecker sum of two 1D reflective-boundary
/// operators, so its spectrum is every sum of one eigenvalue from each
/// direction; the 1D problems are solved as dense symmetric eigenproblems.
pub fn fd_neumann_oracle(cs: &CrossSection, grid_n: usize, count: usize) -> Result<Vec<f64>> {
    let (a, b) = match cs {
        CrossSection::Rectangle { side_a, side_b } => (*side_a, *side_b),
        _ => return Err(Error::Unsupported("finite-difference oracle needs a rectangle".into())),
    };
    cs.validate()?;
    if grid_n < 16 {
        return Err(Error::InvalidParameter(format!("grid_n must be >= 16, got {grid_n}")));
    }
    if count == 0 {
        return Err(Error::InvalidParameter("count must be >= 1".into()));
    }
    let ex = neumann_1d_eigenvalues(a, grid_n);
    let ey = neumann_1d_eigenvalues(b, grid_n);
    let mut sums = Vec::with_capacity(ex.len() * ey.len());
    for (i, x) in ex.iter().enumerate() {
        for (j, y) in ey.iter().enumerate() {
            if i == 0 && j == 0 {
                continue;
            }
            sums.push(x + y);
        }
    }
    sums.sort_by(f64::total_cmp);
    sums.truncate(count);
    Ok(sums)
}
