//! Conformal factors `u` on the closed unit disk, metrics `e^{2u}|dz|²`, and
//! the linear isotopy between two of them.
//!
//! Grids are polar: `σ_j = j / n_sigma` for `j = 0..=n_sigma` and
//! `φ_k = 2πk / n_phi`. The pole row stores `n_phi` copies of one value.

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::diskmetric::DiskProfile;
use crate::error::{Error, Result};
use crate::stencil;

pub const MIN_GRID: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct ConformalDisk {
    n_sigma: usize,
    n_phi: usize,
    u: Vec<f64>,
    r: f64,
}

impl ConformalDisk {
    /// `u` is row-major in `(j, k)`.
    pub fn new(n_sigma: usize, n_phi: usize, u: Vec<f64>) -> Result<Self> {
        let small = n_sigma.min(n_phi);
        if small < MIN_GRID {
            return Err(Error::GridTooCoarse { got: small, min: MIN_GRID });
        }
        if u.len() != (n_sigma + 1) * n_phi {
            return Err(Error::GridMismatch(format!(
                "expected {} values for a {n_sigma}x{n_phi} grid, got {}",
                (n_sigma + 1) * n_phi,
                u.len()
            )));
        }
        if let Some(i) = u.iter().position(|v| !v.is_finite()) {
            return Err(Error::Parse(format!("non-finite conformal factor at index {i}")));
        }
        let pole = u[0];
        if u[..n_phi].iter().any(|v| (v - pole).abs() > 1e-12 * (1.0 + pole.abs())) {
            return Err(Error::GridMismatch("pole row is not constant".into()));
        }
        let mut disk = ConformalDisk { n_sigma, n_phi, u, r: 0.0 };
        disk.u[..n_phi].fill(pole);
        disk.r = disk.boundary_length();
        Ok(disk)
    }

    pub fn from_fn(n_sigma: usize, n_phi: usize, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let mut u = Vec::with_capacity((n_sigma + 1) * n_phi);
        for j in 0..=n_sigma {
            for k in 0..n_phi {
                let sigma = j as f64 / n_sigma as f64;
                let phi = if j == 0 { 0.0 } else { 2.0 * PI * k as f64 / n_phi as f64 };
                u.push(f(sigma, phi));
            }
        }
        ConformalDisk::new(n_sigma, n_phi, u)
    }

    /// Rotationally symmetric factor from its radial samples `u(σ_j)`.
    pub fn from_radial(n_phi: usize, radial: &[f64]) -> Result<Self> {
        let n_sigma = radial.len().saturating_sub(1);
        let u = radial.iter().flat_map(|&v| std::iter::repeat(v).take(n_phi)).collect();
        ConformalDisk::new(n_sigma, n_phi, u)
    }

    pub fn n_sigma(&self) -> usize {
        self.n_sigma
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn values(&self) -> &[f64] {
        &self.u
    }

    pub fn sigma(&self, j: usize) -> f64 {
        j as f64 / self.n_sigma as f64
    }

    pub fn phi(&self, k: usize) -> f64 {
        2.0 * PI * k as f64 / self.n_phi as f64
    }

    pub fn at(&self, j: usize, k: usize) -> f64 {
        self.u[j * self.n_phi + k]
    }

    /// Boundary length `r` fixed at construction.
    pub fn r(&self) -> f64 {
        self.r
    }

    /// `∮ e^u dφ` over the unit circle, trapezoid rule.
    pub fn boundary_length(&self) -> f64 {
        let row = &self.u[self.n_sigma * self.n_phi..];
        row.iter().map(|v| v.exp()).sum::<f64>() * 2.0 * PI / self.n_phi as f64
    }

    pub fn same_grid(&self, other: &ConformalDisk) -> bool {
        self.n_sigma == other.n_sigma && self.n_phi == other.n_phi
    }

    fn map(&self, f: impl Fn(usize) -> f64) -> ConformalDisk {
        let u: Vec<f64> = (0..self.u.len()).map(f).collect();
        let mut out = ConformalDisk { n_sigma: self.n_sigma, n_phi: self.n_phi, u, r: 0.0 };
        out.r = out.boundary_length();
        out
    }

    pub fn add_constant(&self, c: f64) -> ConformalDisk {
        self.map(|i| self.u[i] + c)
    }

    fn boundary_flux_weights(&self) -> Vec<f64> {
        let n = self.n_sigma;
        let tau: Vec<f64> = (0..3).map(|m| ((n - m) as f64 / n as f64).ln()).collect();
        stencil::weights(0.0, &tau, 1).swap_remove(1)
    }

    /// Radial derivative `∂_σ u(1, φ_k)` along the outward normal, from a
    /// quadratic fit in `log σ`.
    pub fn boundary_normal_derivative(&self) -> Vec<f64> {
        let w = self.boundary_flux_weights();
        let n = self.n_sigma;
        (0..self.n_phi)
            .map(|k| (0..3).map(|m| w[m] * self.at(n - m, k)).sum())
            .collect()
    }

    /// `max_k |∂_ν u + 1|`; zero for a geodesic boundary circle.
    pub fn geodesic_residual(&self) -> f64 {
        self.boundary_normal_derivative()
            .iter()
            .map(|d| (d + 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Five-point polar Laplacian of the flat reference metric.
///
/// Radial fluxes use the logarithmic mean `(u_{j+1} - u_j) / log(σ_{j+1}/σ_j)`,
/// which is exact on `a + b log σ` and keeps the sign of the radial part for
/// rotationally symmetric factors. The pole value averages the first ring.
pub fn laplacian(d: &ConformalDisk) -> Vec<f64> {
    let (n, m) = (d.n_sigma, d.n_phi);
    let ds = 1.0 / n as f64;
    let dphi = 2.0 * PI / m as f64;
    let inner_face = 3.0 / LN_2 - 4.0;
    let log_ratio: Vec<f64> = (1..n).map(|j| ((j + 1) as f64 / j as f64).ln()).collect();
    let flux_w = d.boundary_flux_weights();
    let half_cell = (1.0 - (1.0 - 0.5 * ds).powi(2)) / 2.0;

    let mut out = vec![0.0; (n + 1) * m];
    let ring_mean = (0..m).map(|k| d.at(1, k)).sum::<f64>() / m as f64;
    let pole = 4.0 * (ring_mean - d.at(0, 0)) / (ds * ds);
    out[..m].fill(pole);
    for j in 1..=n {
        let sigma = j as f64 * ds;
        for k in 0..m {
            let u = d.at(j, k);
            let inner = if j == 1 {
                inner_face * (u - d.at(0, 0))
            } else {
                (u - d.at(j - 1, k)) / log_ratio[j - 2]
            };
            let radial = if j < n {
                let outer = (d.at(j + 1, k) - u) / log_ratio[j - 1];
                (outer - inner) / (sigma * ds)
            } else {
                let outer: f64 = (0..3).map(|i| flux_w[i] * d.at(n - i, k)).sum();
                (outer - inner) / half_cell
            };
            let (kp, km) = ((k + 1) % m, (k + m - 1) % m);
            let angular = (d.at(j, kp) - 2.0 * u + d.at(j, km)) / (sigma * sigma * dphi * dphi);
            out[j * m + k] = radial + angular;
        }
    }
    out
}

/// Lagrange interpolation of `values` (indexed from `lo`) at `x` on a grid of
/// spacing `dx`, returning value and first derivative.
fn interpolate(values: &dyn Fn(isize) -> f64, x: f64, dx: f64, lo: isize, count: usize) -> (f64, f64) {
    let nodes: Vec<f64> = (0..count).map(|i| (lo + i as isize) as f64 * dx).collect();
    let w = stencil::weights(x, &nodes, 1);
    let mut v = 0.0;
    let mut dv = 0.0;
    for i in 0..count {
        let f = values(lo + i as isize);
        v += w[0][i] * f;
        dv += w[1][i] * f;
    }
    (v, dv)
}

/// Conformal-polar form of a revolution profile: `e^{u(σ)} σ = h(ρ(σ))` with
/// `log σ(ρ) = ∫ dτ / h(τ)` normalized so that `σ(ρ_max) = 1`.
pub fn standard_factor(d: &DiskProfile, n_sigma: usize, n_phi: usize) -> Result<ConformalDisk> {
    let h = d.samples();
    let n = d.n();
    if n < 6 {
        return Err(Error::GridTooCoarse { got: n, min: 6 });
    }
    for (i, &v) in h.iter().enumerate().skip(1) {
        if !(v > 0.0) {
            return Err(Error::ProfileSingular { rho: d.rho(i), h: v });
        }
    }
    let dx = d.delta();

    // G(ρ) = ∫_0^ρ (1/h - 1/τ) dτ; the integrand is odd and vanishes at 0.
    let f: Vec<f64> = (0..=n).map(|i| if i == 0 { 0.0 } else { 1.0 / h[i] - 1.0 / d.rho(i) }).collect();
    let fx = |i: isize| if i < 0 { -f[(-i) as usize] } else { f[i as usize] };
    let mut g = vec![0.0; n + 1];
    for i in 0..n {
        let ii = i as isize;
        let piece = if i + 2 <= n {
            -fx(ii - 1) + 13.0 * fx(ii) + 13.0 * fx(ii + 1) - fx(ii + 2)
        } else {
            fx(ii - 2) - 5.0 * fx(ii - 1) + 19.0 * fx(ii) + 9.0 * fx(ii + 1)
        };
        g[i + 1] = g[i] + dx * piece / 24.0;
    }
    let c = d.rho_max().ln() + g[n];

    let h_ext = |i: isize| if i < 0 { -h[(-i) as usize] } else { h[i as usize] };
    let g_ext = |i: isize| if i < 0 { g[(-i) as usize] } else { g[i as usize] };
    let phi_at = |i: usize| d.rho(i).ln() + g[i];
    let stencil_lo = |i: usize| -> isize { (i as isize - 2).min(n as isize - 5) };

    let mut radial = Vec::with_capacity(n_sigma + 1);
    radial.push(c);
    for j in 1..=n_sigma {
        if j == n_sigma {
            radial.push(h[n].ln());
            continue;
        }
        let target = (j as f64 / n_sigma as f64).ln() + c;
        // Interval [ρ_i, ρ_{i+1}] containing the solution.
        let (mut a, mut b) = (0usize, n);
        while b - a > 1 {
            let mid = (a + b) / 2;
            if phi_at(mid) <= target {
                a = mid;
            } else {
                b = mid;
            }
        }
        let lo = stencil_lo(a);
        let (mut left, mut right) = (d.rho(a), d.rho(a + 1));
        let mut rho = 0.5 * (left + right);
        for _ in 0..100 {
            let (gv, gd) = interpolate(&g_ext, rho, dx, lo, 6);
            let val = rho.ln() + gv - target;
            if val > 0.0 {
                right = rho;
            } else {
                left = rho;
            }
            if val.abs() <= 1e-15 * target.abs().max(1.0) {
                break;
            }
            let next = rho - val / (1.0 / rho + gd);
            rho = if next > left && next < right { next } else { 0.5 * (left + right) };
            if right - left <= 1e-17 * right {
                break;
            }
        }
        let (hv, _) = interpolate(&h_ext, rho, dx, lo, 6);
        let (gv, _) = interpolate(&g_ext, rho, dx, lo, 6);
        radial.push((hv / rho).ln() - gv + c);
    }
    ConformalDisk::from_radial(n_phi, &radial)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathStep {
    #[serde(with = "arith::real_str")]
    pub s: f64,
    #[serde(with = "arith::real_str")]
    pub a: f64,
    /// `min(-Δw_s)` over the grid.
    #[serde(with = "arith::real_str")]
    pub min_curvature_density: f64,
    #[serde(with = "arith::real_str")]
    pub boundary_length: f64,
    #[serde(with = "arith::real_str")]
    pub geodesic_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsotopyPath {
    pub r: f64,
    pub steps: Vec<PathStep>,
    pub disks: Vec<ConformalDisk>,
}

/// `w_s = (1 - s) u0 + s u + a(s)/2` at `s = m/steps`, with `a(s)` fixing the
/// boundary length at that of `u0`.
pub fn deform(u: &ConformalDisk, u0: &ConformalDisk, steps: usize, tol: f64) -> Result<IsotopyPath> {
    if !u.same_grid(u0) {
        return Err(Error::GridMismatch(format!(
            "{}x{} vs {}x{}",
            u.n_sigma, u.n_phi, u0.n_sigma, u0.n_phi
        )));
    }
    if steps == 0 {
        return Err(Error::OutOfRange("at least one step is required".into()));
    }
    let r = u0.r;
    let mut path = IsotopyPath { r, steps: Vec::new(), disks: Vec::new() };
    for m in 0..=steps {
        let s = m as f64 / steps as f64;
        let blend = u0.map(|i| (1.0 - s) * u0.u[i] + s * u.u[i]);
        let a = 2.0 * (r / blend.r).ln();
        let w = blend.add_constant(a / 2.0);
        let lap = laplacian(&w);
        let (idx, min) = lap
            .iter()
            .enumerate()
            .map(|(i, v)| (i, -v))
            .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
        if min < -tol {
            return Err(Error::CurvatureSignViolation {
                s,
                j: idx / w.n_phi,
                k: idx % w.n_phi,
                value: min,
                tol,
            });
        }
        path.steps.push(PathStep {
            s,
            a,
            min_curvature_density: min,
            boundary_length: w.r,
            geodesic_residual: w.geodesic_residual(),
        });
        path.disks.push(w);
    }
    Ok(path)
}
