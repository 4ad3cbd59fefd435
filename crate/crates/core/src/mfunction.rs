//! M-functions: the radial characteristic function M̃(z) = ∏ J₀(c_ω z) and
//! the density M^Re of Re f_Π obtained from it by Fourier inversion,
//!
//!   M^Re(u) = (2/√(2π)) ∫₀^∞ M̃(z) cos(zu) dz,
//!
//! normalized so that (1/√(2π)) ∫ M^Re(u) du = 1.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{out_of_range, Error, Result};
use crate::quad::GaussLegendre;
use crate::series::{PairFlags, SpectralPair, Truncation};
use crate::specfun;
use crate::sum::Neumaier;

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Fewest entries for which the inversion is attempted.
pub const MIN_ENTRIES: usize = 5;
/// Target for ∫_Z^∞ |M̃| dz.
pub const TAIL_TARGET: f64 = 1e-8;
/// Target for the envelope value at the cutoff.
pub const ENVELOPE_TARGET: f64 = 1e-10;
const NODES_PER_PANEL: usize = 16;
const MAX_NODES: usize = 5_000_000;

/// M̃(z) = ∏ J₀(c_ω z).
pub fn mtilde_radial(pair: &SpectralPair, z: f64) -> f64 {
    product_j0(&pair.magnitudes(), z)
}

fn product_j0(c: &[f64], z: f64) -> f64 {
    let mut p = 1.0;
    for &ci in c {
        p *= specfun::j0(ci * z);
        if p == 0.0 {
            break;
        }
    }
    p
}

/// ∏ I₀(y c_ω), the characteristic function at z = −iy.
pub fn mtilde_at_imaginary(pair: &SpectralPair, y: f64) -> Result<f64> {
    let log = crate::sum::sum(pair.magnitudes().iter().map(|&c| specfun::ln_i0(y * c)));
    let v = log.exp();
    if !v.is_finite() {
        return Err(out_of_range("y", y, "values with finite ∏ I₀(y c)"));
    }
    Ok(v)
}

/// ∏ min(1, √(2/(π c z))), which bounds |M̃(z)| since |J₀(x)| ≤ √(2/(πx)).
/// Also returns how many factors are below 1.
fn envelope(c: &[f64], z: f64) -> (f64, usize) {
    let mut log = 0.0;
    let mut active = 0;
    for &ci in c {
        let f = 2.0 / (PI * ci * z);
        if f < 1.0 {
            log += 0.5 * f.ln();
            active += 1;
        }
    }
    (log.exp(), active)
}

/// Bound on ∫_Z^∞ |M̃| dz: beyond Z each active factor decays at least like z^{−1/2}.
fn tail_integral_bound(c: &[f64], z: f64) -> f64 {
    let (e, k) = envelope(c, z);
    if k < 3 {
        f64::INFINITY
    } else {
        e * z / (0.5 * k as f64 - 1.0)
    }
}

/// Symmetric grid of `points` values on [−half_width, half_width].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UGrid {
    pub points: usize,
    /// Defaults to 1.1·Σc_ω.
    pub half_width: Option<f64>,
}

impl Default for UGrid {
    fn default() -> Self {
        Self {
            points: 2001,
            half_width: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MFunctionDensity {
    pub entries: usize,
    pub flags: PairFlags,
    pub truncation: Option<Truncation>,
    /// 0 followed by the quadrature nodes.
    pub z_grid: Vec<f64>,
    pub mtilde: Vec<f64>,
    pub cutoff_z: f64,
    /// Bound on ∫_Z^∞ |M̃| dz.
    pub tail_bound: f64,
    pub u_grid: Vec<f64>,
    pub m_re: Vec<f64>,
    pub support_radius: f64,
    pub mass: f64,
    pub second_moment: f64,
}

/// M^Re on a symmetric grid; needs at least five entries.
pub fn invert_to_m_re(pair: &SpectralPair, grid: UGrid) -> Result<MFunctionDensity> {
    if pair.len() < MIN_ENTRIES {
        return Err(Error::Precondition(format!(
            "inversion needs at least {MIN_ENTRIES} entries, pair has {}",
            pair.len()
        )));
    }
    if grid.points < 3 || grid.points.is_multiple_of(2) {
        return Err(out_of_range("grid points", grid.points as f64, "odd and ≥ 3"));
    }
    let c = pair.magnitudes();
    let support = crate::sum::sum(c.iter().copied());
    let half_width = grid.half_width.unwrap_or(1.1 * support);
    if !(half_width > 0.0) {
        return Err(out_of_range("half width", half_width, "(0, ∞)"));
    }

    // Cutoff from the envelope.
    let c_max = c.iter().copied().fold(0.0, f64::max);
    let mut z_cut = 2.0 / (PI * c_max);
    let mut guard = 0;
    while tail_integral_bound(&c, z_cut) >= TAIL_TARGET || envelope(&c, z_cut).0 >= ENVELOPE_TARGET {
        z_cut *= 1.1;
        guard += 1;
        if guard > 2000 {
            return Err(Error::NoConvergence("no envelope cutoff found".into()));
        }
    }

    // Panels no wider than half a period of cos(zu) for every grid u and of
    // the fastest oscillation of M̃.
    let width = PI / (support + half_width);
    let panels = (z_cut / width).ceil() as usize;
    if panels * NODES_PER_PANEL > MAX_NODES {
        return Err(Error::ResourceCap {
            requested: (panels * NODES_PER_PANEL) as u64,
            cap: MAX_NODES as u64,
        });
    }
    let z_cut = panels as f64 * width;
    let gl = GaussLegendre::new(NODES_PER_PANEL);
    let mut nodes = Vec::with_capacity(panels * NODES_PER_PANEL);
    let mut weights = Vec::with_capacity(panels * NODES_PER_PANEL);
    for p in 0..panels {
        let a = p as f64 * width;
        for (z, w) in gl.mapped(a, a + width) {
            nodes.push(z);
            weights.push(w);
        }
    }
    let mtilde_nodes: Vec<f64> = nodes.par_iter().map(|&z| product_j0(&c, z)).collect();
    let weighted: Vec<f64> = mtilde_nodes.iter().zip(&weights).map(|(m, w)| m * w).collect();

    let n = grid.points;
    let mid = n / 2;
    let step = half_width / mid as f64;
    let u_grid: Vec<f64> = (0..n).map(|j| (j as f64 - mid as f64) * step).collect();
    let right: Vec<f64> = (mid..n)
        .into_par_iter()
        .map(|j| {
            let u = u_grid[j];
            let mut acc = Neumaier::new();
            for (z, w) in nodes.iter().zip(&weighted) {
                acc.add(w * (z * u).cos());
            }
            2.0 * INV_SQRT_2PI * acc.value()
        })
        .collect();
    // M̃ is real and even, so M^Re is even; mirror the u ≥ 0 half.
    let m_re: Vec<f64> = (0..n).map(|j| right[j.abs_diff(mid)]).collect();

    let trapezoid = |f: &dyn Fn(usize) -> f64| -> f64 {
        let mut acc = Neumaier::new();
        for j in 0..n {
            let w = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
            acc.add(w * f(j));
        }
        acc.value() * step * INV_SQRT_2PI
    };
    let mass = trapezoid(&|j| m_re[j]);
    let second_moment = trapezoid(&|j| u_grid[j] * u_grid[j] * m_re[j]);

    let mut z_grid = Vec::with_capacity(nodes.len() + 1);
    z_grid.push(0.0);
    z_grid.extend_from_slice(&nodes);
    let mut mtilde = Vec::with_capacity(nodes.len() + 1);
    mtilde.push(1.0);
    mtilde.extend_from_slice(&mtilde_nodes);

    Ok(MFunctionDensity {
        entries: pair.len(),
        flags: *pair.flags(),
        truncation: pair.truncation().cloned(),
        z_grid,
        mtilde,
        cutoff_z: z_cut,
        tail_bound: tail_integral_bound(&c, z_cut),
        u_grid,
        m_re,
        support_radius: support,
        mass,
        second_moment,
    })
}

impl MFunctionDensity {
    fn step(&self) -> f64 {
        self.u_grid[1] - self.u_grid[0]
    }

    fn trapezoid(&self, f: impl Fn(f64, f64) -> f64) -> f64 {
        let n = self.u_grid.len();
        let mut acc = Neumaier::new();
        for j in 0..n {
            let w = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
            acc.add(w * f(self.u_grid[j], self.m_re[j]));
        }
        acc.value() * self.step() * INV_SQRT_2PI
    }

    /// (1/√(2π)) ∫ M^Re(u) cos(zu) du, which should reproduce M̃(z).
    pub fn fourier(&self, z: f64) -> f64 {
        self.trapezoid(|u, m| m * (z * u).cos())
    }

    /// (1/√(2π)) ∫ M^Re(u) e^{yu} du, which should reproduce ∏ I₀(y c).
    pub fn exponential_moment(&self, y: f64) -> f64 {
        self.trapezoid(|u, m| m * (y * u).exp())
    }

    /// Cumulative distribution at the grid points, trapezoid rule.
    pub fn cdf(&self) -> Vec<f64> {
        let h = self.step() * INV_SQRT_2PI;
        let mut acc = Neumaier::new();
        let mut out = Vec::with_capacity(self.m_re.len());
        out.push(0.0);
        for w in self.m_re.windows(2) {
            acc.add(0.5 * (w[0] + w[1]) * h);
            out.push(acc.value());
        }
        out
    }

    /// Largest |M^Re(u) − M^Re(−u)|.
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.m_re.len();
        (0..n / 2)
            .map(|j| (self.m_re[j] - self.m_re[n - 1 - j]).abs())
            .fold(0.0, f64::max)
    }

    /// Most negative value of M^Re, as a nonnegative number.
    pub fn negativity(&self) -> f64 {
        self.m_re.iter().copied().fold(0.0, |a, v| a.max(-v))
    }

    /// Largest |M^Re(u)| over |u| > support radius.
    pub fn support_leakage(&self) -> f64 {
        self.u_grid
            .iter()
            .zip(&self.m_re)
            .filter(|(u, _)| u.abs() > self.support_radius)
            .map(|(_, m)| m.abs())
            .fold(0.0, f64::max)
    }
}
