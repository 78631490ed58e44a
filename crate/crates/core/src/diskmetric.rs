//! Rotationally symmetric disks `dρ² + h(ρ)² dφ²` with nonnegative curvature
//! and a flat, totally geodesic boundary circle.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::stencil;

/// Curvature shape on `[0, 1]`; the disk curvature is proportional to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    /// `exp(1 - 1/(1 - x²))`: maximal at the pole, flat at `x = 1`.
    #[default]
    SymmetricBump,
    /// `exp(4 - 1/(x(1 - x)))`: flat at both ends.
    FlatBump,
}

impl Shape {
    pub fn eval(self, x: f64) -> f64 {
        match self {
            Shape::SymmetricBump => {
                if x.abs() >= 1.0 {
                    0.0
                } else {
                    (1.0 - 1.0 / (1.0 - x * x)).exp()
                }
            }
            Shape::FlatBump => {
                if x <= 0.0 || x >= 1.0 {
                    0.0
                } else {
                    (4.0 - 1.0 / (x * (1.0 - x))).exp()
                }
            }
        }
    }
}

/// Samples `h_i = h(i Δ)`, `Δ = rho_max / N`, `i = 0..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskProfile {
    rho_max: f64,
    h: Vec<f64>,
}

impl DiskProfile {
    pub fn new(rho_max: f64, h: Vec<f64>) -> Result<Self> {
        if !(rho_max > 0.0 && rho_max.is_finite()) {
            return Err(Error::OutOfRange(format!("rho_max must be positive, got {rho_max}")));
        }
        if h.len() < 2 {
            return Err(Error::GridTooCoarse { got: h.len().saturating_sub(1), min: 1 });
        }
        if let Some(i) = h.iter().position(|v| !v.is_finite()) {
            return Err(Error::Parse(format!("non-finite sample at index {i}")));
        }
        Ok(DiskProfile { rho_max, h })
    }

    /// Builds a profile by sampling `f` on `[0, rho_max]`.
    pub fn from_fn(rho_max: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let h = (0..=n).map(|i| f(rho_max * i as f64 / n as f64)).collect();
        DiskProfile::new(rho_max, h)
    }

    pub fn rho_max(&self) -> f64 {
        self.rho_max
    }

    pub fn samples(&self) -> &[f64] {
        &self.h
    }

    /// Number of grid intervals.
    pub fn n(&self) -> usize {
        self.h.len() - 1
    }

    pub fn delta(&self) -> f64 {
        self.rho_max / self.n() as f64
    }

    pub fn rho(&self, i: usize) -> f64 {
        self.rho_max * i as f64 / self.n() as f64
    }

    pub fn boundary_length(&self) -> f64 {
        2.0 * PI * self.h[self.n()]
    }

    /// `2π ∫ h dρ`.
    pub fn area(&self) -> f64 {
        2.0 * PI * simpson(&self.h, self.delta())
    }
}

/// Fourth-order Gregory rule: the trapezoid rule with end corrections. Unit
/// interior weights make sums of difference stencils telescope.
pub fn gregory(f: &[f64], dx: f64) -> f64 {
    const ENDS: [f64; 3] = [3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0];
    let n = f.len() - 1;
    if n < 6 {
        return simpson(f, dx);
    }
    let mut s: f64 = f[3..n - 2].iter().sum();
    for (k, w) in ENDS.iter().enumerate() {
        s += w * (f[k] + f[n - k]);
    }
    s * dx
}

/// Composite Simpson rule on a uniform grid; a 3/8 panel closes odd counts.
pub fn simpson(f: &[f64], dx: f64) -> f64 {
    let n = f.len() - 1;
    match n {
        0 => 0.0,
        1 => 0.5 * dx * (f[0] + f[1]),
        2 => dx / 3.0 * (f[0] + 4.0 * f[1] + f[2]),
        3 => 3.0 * dx / 8.0 * (f[0] + 3.0 * f[1] + 3.0 * f[2] + f[3]),
        _ => {
            let even = if n % 2 == 0 { n } else { n - 3 };
            let mut s = f[0] + f[even];
            for i in 1..even {
                s += if i % 2 == 1 { 4.0 * f[i] } else { 2.0 * f[i] };
            }
            let mut total = s * dx / 3.0;
            if even < n {
                let g = &f[even..];
                total += 3.0 * dx / 8.0 * (g[0] + 3.0 * g[1] + 3.0 * g[2] + g[3]);
            }
            total
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub geodesic: f64,
    pub flatness: f64,
    pub curvature: f64,
    pub gauss_bonnet: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { geodesic: 1e-10, flatness: 1e-6, curvature: 1e-12, gauss_bonnet: 1e-8 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub nonnegative_curvature: bool,
    pub geodesic_boundary: bool,
    pub flat_boundary: bool,
    pub gauss_bonnet: bool,
}

impl Checks {
    pub fn all(&self) -> bool {
        self.nonnegative_curvature && self.geodesic_boundary && self.flat_boundary && self.gauss_bonnet
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureReport {
    #[serde(with = "arith::real_str")]
    pub min_k: f64,
    #[serde(with = "arith::real_str")]
    pub total_curvature: f64,
    #[serde(with = "arith::real_str")]
    pub boundary_geodesic_defect: f64,
    /// Estimated `|h^(k)(rho_max)|` for `k = 2, 3, 4`.
    #[serde(with = "arith::real_vec_str")]
    pub flatness: Vec<f64>,
    #[serde(with = "arith::real_vec_str")]
    pub flatness_thresholds: Vec<f64>,
    #[serde(with = "arith::real_str")]
    pub boundary_length: f64,
    #[serde(with = "arith::real_str")]
    pub pole_slope: f64,
    #[serde(with = "arith::real_str")]
    pub gauss_bonnet_residual: f64,
    pub checks: Checks,
}

impl CurvatureReport {
    pub fn passed(&self) -> bool {
        self.checks.all()
    }
}

pub const MIN_VERIFY_GRID: usize = 10;
pub const MIN_SYNTH_GRID: usize = 100;
const FLATNESS_ORDERS: [usize; 3] = [2, 3, 4];

fn binomial(k: usize, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (k - i) as f64 / (i + 1) as f64)
}

/// Rewrites a stencil that annihilates affine functions, listed by ascending
/// offset, as weights on the second differences centred at its inner points.
fn on_second_differences(c: &[f64]) -> Vec<f64> {
    let mut beta: Vec<f64> = Vec::with_capacity(c.len() - 2);
    for k in 0..c.len() - 2 {
        let b1 = if k >= 1 { beta[k - 1] } else { 0.0 };
        let b2 = if k >= 2 { beta[k - 2] } else { 0.0 };
        beta.push(c[k] + 2.0 * b1 - b2);
    }
    beta
}

/// Second derivative samples, fourth order, odd extension at the pole.
///
/// Built from second differences taken as differences of first differences,
/// so rounding stays relative to the curvature rather than to `h`.
fn second_derivative(h: &[f64], dx: f64) -> Vec<f64> {
    let n = h.len() - 1;
    let diff: Vec<f64> = h.windows(2).map(|w| w[1] - w[0]).collect();
    let mut dd = vec![0.0; n];
    for i in 1..n {
        dd[i] = diff[i] - diff[i - 1];
    }
    let ascending = |offsets: &[i32]| -> Vec<f64> {
        let mut w = stencil::offset_weights(offsets, 2);
        w.reverse();
        on_second_differences(&w)
    };
    let near_end = ascending(&[1, 0, -1, -2, -3, -4]);
    let at_end = ascending(&[0, -1, -2, -3, -4, -5]);
    let dx2 = dx * dx;
    (0..=n)
        .map(|i| {
            if i == 0 {
                0.0
            } else if i + 2 <= n {
                (dd[i] - (dd[i + 1] - 2.0 * dd[i] + dd[i - 1]) / 12.0) / dx2
            } else {
                let w = if i + 1 == n { &near_end } else { &at_end };
                w.iter().zip(&dd[n - 4..]).map(|(b, v)| b * v).sum::<f64>() / dx2
            }
        })
        .collect()
}

/// Finite-difference curvature checks of a sampled profile.
pub fn verify(d: &DiskProfile, tol: &Tolerances) -> Result<CurvatureReport> {
    let n = d.n();
    if n < MIN_VERIFY_GRID {
        return Err(Error::GridTooCoarse { got: n, min: MIN_VERIFY_GRID });
    }
    let h = &d.h;
    let dx = d.delta();
    let dx2 = dx * dx;

    // Second differences as differences of first differences: exact wherever
    // neighbouring samples share a binade.
    let diff: Vec<f64> = h.windows(2).map(|w| w[1] - w[0]).collect();
    let mut min_k = -(h[2] - 2.0 * h[1]) / (dx2 * h[1]);
    for i in 1..n {
        min_k = min_k.min(-(diff[i] - diff[i - 1]) / (dx2 * h[i]));
    }
    min_k = min_k.min(-(diff[n - 1] - diff[n - 2]) / (dx2 * h[n]));

    let neg_h2: Vec<f64> = second_derivative(h, dx).into_iter().map(|v| -v).collect();
    let total_curvature = 2.0 * PI * gregory(&neg_h2, dx);

    let back = [25.0, -48.0, 36.0, -16.0, 3.0];
    let slope_end = back.iter().enumerate().map(|(j, c)| c * h[n - j]).sum::<f64>() / (12.0 * dx);
    let pole_slope = (16.0 * h[1] - 2.0 * h[2]) / (12.0 * dx);

    let h_end = h[n];
    let scale = tol.flatness * (dx / d.rho_max).powi(2) * h_end.abs();
    let mut flatness = Vec::new();
    let mut thresholds = Vec::new();
    for &k in &FLATNESS_ORDERS {
        let nabla: f64 = (0..=k)
            .map(|j| if j % 2 == 0 { 1.0 } else { -1.0 } * binomial(k, j) * h[n - j])
            .sum();
        let dxk = dx.powi(k as i32);
        flatness.push(nabla.abs() / dxk);
        thresholds.push(scale / dxk);
    }

    let defect = slope_end.abs();
    let gb_residual = (total_curvature - 2.0 * PI * (pole_slope - slope_end)).abs();
    let checks = Checks {
        nonnegative_curvature: min_k >= -tol.curvature,
        geodesic_boundary: defect <= tol.geodesic,
        flat_boundary: flatness.iter().zip(&thresholds).all(|(v, t)| v <= t),
        gauss_bonnet: gb_residual <= tol.gauss_bonnet,
    };
    Ok(CurvatureReport {
        min_k,
        total_curvature,
        boundary_geodesic_defect: defect,
        flatness,
        flatness_thresholds: thresholds,
        boundary_length: d.boundary_length(),
        pole_slope,
        gauss_bonnet_residual: gb_residual,
        checks,
    })
}

struct Shot {
    h: Vec<f64>,
    slope_end: f64,
    positive: bool,
}

fn shoot(psi: &[f64], psi_mid: &[f64], c: f64) -> Shot {
    let n = psi.len() - 1;
    let dx = 1.0 / n as f64;
    let mut h = Vec::with_capacity(n + 1);
    let (mut y, mut g) = (0.0f64, 1.0f64);
    h.push(y);
    let mut positive = true;
    for i in 0..n {
        let (a0, am, a1) = (c * psi[i], c * psi_mid[i], c * psi[i + 1]);
        let k1y = g;
        let k1g = -a0 * y;
        let k2y = g + 0.5 * dx * k1g;
        let k2g = -am * (y + 0.5 * dx * k1y);
        let k3y = g + 0.5 * dx * k2g;
        let k3g = -am * (y + 0.5 * dx * k2y);
        let k4y = g + dx * k3g;
        let k4g = -a1 * (y + dx * k3y);
        y += dx / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        g += dx / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
        positive &= y > 0.0;
        h.push(y);
    }
    Shot { h, slope_end: g, positive }
}

fn overshoots(s: &Shot) -> bool {
    s.slope_end < 0.0 || !s.positive
}

/// Solves `h'' = -c ψ(ρ) h`, `h(0) = 0`, `h'(0) = 1` on `[0, 1]` with `c`
/// chosen so that `h'(1) = 0`, then rescales to the requested boundary length.
pub fn synthesize_standard_disk(psi: impl Fn(f64) -> f64, n: usize, target_length: f64) -> Result<DiskProfile> {
    if n < MIN_SYNTH_GRID {
        return Err(Error::GridTooCoarse { got: n, min: MIN_SYNTH_GRID });
    }
    if !(target_length > 0.0 && target_length.is_finite()) {
        return Err(Error::OutOfRange(format!("boundary length must be positive, got {target_length}")));
    }
    let psi_at: Vec<f64> = (0..=n).map(|i| psi(i as f64 / n as f64)).collect();
    let psi_mid: Vec<f64> = (0..n).map(|i| psi((i as f64 + 0.5) / n as f64)).collect();
    for (i, v) in psi_at.iter().enumerate() {
        if !(v.is_finite() && *v >= 0.0) {
            return Err(Error::InvalidShape(i as f64 / n as f64));
        }
    }
    for k in 1..64 {
        let x = k as f64 / 64.0;
        if !(psi(x) > 0.0) {
            return Err(Error::InvalidShape(x));
        }
    }

    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut doublings = 0;
    while !overshoots(&shoot(&psi_at, &psi_mid, hi)) {
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings > 60 {
            return Err(Error::ShootingFailed("h'(1) never changes sign".into()));
        }
    }
    for _ in 0..200 {
        if hi - lo <= 1e-15 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if overshoots(&shoot(&psi_at, &psi_mid, mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // The lower end keeps h' >= 0 at the boundary.
    let shot = shoot(&psi_at, &psi_mid, lo);
    if shot.slope_end.abs() > 1e-12 {
        return Err(Error::ShootingFailed(format!("residual h'(1) = {:e}", shot.slope_end)));
    }
    let lambda = target_length / (2.0 * PI * shot.h[n]);
    let mut h: Vec<f64> = shot.h.iter().map(|v| lambda * v).collect();
    enforce_tail_concavity(&mut h);
    enforce_concavity(&mut h);
    DiskProfile::new(lambda, h)
}

pub fn standard_disk(n: usize, target_length: f64) -> Result<DiskProfile> {
    synthesize_standard_disk(|x| Shape::SymmetricBump.eval(x), n, target_length)
}

/// Rounding makes the sampled increments of an almost-flat tail jitter by
/// single ulps, which reads as curvature of either sign. Within the binade of
/// the boundary value, replace the increments by their closest non-increasing,
/// nonnegative integer-ulp sequence.
fn enforce_tail_concavity(h: &mut [f64]) {
    let n = h.len() - 1;
    let end = h[n];
    if !(end > 0.0 && end.is_normal()) {
        return;
    }
    let exp = ((end.to_bits() >> 52) & 0x7ff) as i64;
    let unit = f64::from_bits(((exp - 52).max(1) as u64) << 52);
    let same_binade = |v: f64| v.is_normal() && ((v.to_bits() >> 52) & 0x7ff) as i64 == exp && v > 0.0;
    let mut start = n;
    while start > 0 && same_binade(h[start - 1]) {
        start -= 1;
    }
    if n - start < 3 {
        return;
    }
    let k: Vec<i64> = h[start..].iter().map(|v| (v / unit) as i64).collect();
    let d: Vec<i64> = k.windows(2).map(|w| w[1] - w[0]).collect();

    // Pool adjacent blocks until each block, spread evenly in integers,
    // stays below its predecessor.
    let mut blocks: Vec<(i64, i64)> = Vec::new();
    for &v in &d {
        blocks.push((v, 1));
        while blocks.len() > 1 {
            let (s1, c1) = blocks[blocks.len() - 2];
            let (s2, c2) = blocks[blocks.len() - 1];
            if s1.div_euclid(c1) >= (s2 + c2 - 1).div_euclid(c2) {
                break;
            }
            blocks.pop();
            let last = blocks.last_mut().unwrap();
            *last = (s1 + s2, c1 + c2);
        }
    }
    let mut acc = k[0];
    let mut i = start;
    for (s, c) in blocks {
        let q = s.div_euclid(c);
        let rem = s - q * c;
        for j in 0..c {
            let step = (q + i64::from(j < rem)).max(0);
            acc += step;
            i += 1;
            h[i] = acc as f64 * unit;
        }
    }
}

/// Caps each sampled increment at its predecessor and at zero from below,
/// lowering samples by the fewest ulps needed. Near a flat pole the samples
/// are `λρ` up to rounding and the raw increments jitter either way.
fn enforce_concavity(h: &mut [f64]) {
    for i in 1..h.len() - 1 {
        let prev = h[i] - h[i - 1];
        if h[i + 1] - h[i] > prev {
            let mut c = h[i] + prev;
            while c - h[i] > prev {
                c = f64::from_bits(c.to_bits() - 1);
            }
            h[i + 1] = c;
        }
        if h[i + 1] < h[i] {
            h[i + 1] = h[i];
        }
    }
}

/// The homothety `r² g`: `ρ -> rρ`, `h -> rh`.
pub fn scale(d: &DiskProfile, r: f64) -> Result<DiskProfile> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::OutOfRange(format!("scale factor must be positive, got {r}")));
    }
    DiskProfile::new(d.rho_max * r, d.h.iter().map(|v| v * r).collect())
}

/// Appends a flat cylinder `S¹ x [0, length]`, snapped to a whole number of
/// grid steps.
pub fn attach_flat_collar(d: &DiskProfile, length: f64, tol: &Tolerances) -> Result<DiskProfile> {
    if !(length >= 0.0 && length.is_finite()) {
        return Err(Error::OutOfRange(format!("collar length must be nonnegative, got {length}")));
    }
    let report = verify(d, tol)?;
    if let Some(i) = (0..report.flatness.len()).find(|&i| report.flatness[i] > report.flatness_thresholds[i]) {
        return Err(Error::BoundaryNotFlat {
            order: FLATNESS_ORDERS[i],
            value: report.flatness[i],
            threshold: report.flatness_thresholds[i],
        });
    }
    let steps = (length / d.delta()).round() as usize;
    if steps == 0 {
        return Ok(d.clone());
    }
    let end = d.h[d.n()];
    let mut h = d.h.clone();
    h.extend(std::iter::repeat(end).take(steps));
    DiskProfile::new(d.delta() * (d.n() + steps) as f64, h)
}

/// Length actually added by [`attach_flat_collar`] for a requested length.
pub fn snapped_collar_length(d: &DiskProfile, length: f64) -> f64 {
    (length / d.delta()).round() * d.delta()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hemisphere(n: usize) -> DiskProfile {
        DiskProfile::from_fn(0.25, n, |r| (2.0 * PI * r).sin() / (2.0 * PI)).unwrap()
    }

    #[test]
    fn shapes() {
        assert_eq!(Shape::SymmetricBump.eval(0.0), 1.0);
        assert_eq!(Shape::SymmetricBump.eval(1.0), 0.0);
        assert!((Shape::FlatBump.eval(0.5) - 1.0).abs() < 1e-15);
        assert_eq!(Shape::FlatBump.eval(0.0), 0.0);
    }

    #[test]
    fn gregory_exact_on_cubics() {
        for n in [6, 7, 20, 33] {
            let dx = 2.0 / n as f64;
            let f: Vec<f64> = (0..=n).map(|i| (i as f64 * dx).powi(3)).collect();
            assert!((gregory(&f, dx) - 4.0).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn simpson_exact_on_cubics() {
        for n in [4usize, 5, 7, 10] {
            let dx = 2.0 / n as f64;
            let f: Vec<f64> = (0..=n).map(|i| (i as f64 * dx).powi(3)).collect();
            assert!((simpson(&f, dx) - 4.0).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn hemisphere_fails_only_flatness() {
        let r = verify(&hemisphere(2048), &Tolerances::default()).unwrap();
        assert!(r.checks.nonnegative_curvature);
        assert!(r.checks.geodesic_boundary, "defect {}", r.boundary_geodesic_defect);
        assert!(r.checks.gauss_bonnet);
        assert!(!r.checks.flat_boundary);
        assert!((r.total_curvature - 2.0 * PI).abs() < 1e-8);
        assert!((r.flatness[0] - 2.0 * PI).abs() < 1e-3);
    }

    #[test]
    fn flat_disk() {
        let d = DiskProfile::from_fn(1.0, 64, |r| r).unwrap();
        let r = verify(&d, &Tolerances::default()).unwrap();
        assert_eq!(r.min_k, 0.0);
        assert!((r.boundary_geodesic_defect - 1.0).abs() < 1e-12);
        assert!(r.total_curvature.abs() < 1e-10);
        assert!(!r.checks.geodesic_boundary);
    }

    #[test]
    fn coarse_grid_rejected() {
        let d = DiskProfile::from_fn(1.0, 9, |r| r).unwrap();
        assert_eq!(verify(&d, &Tolerances::default()).unwrap_err(), Error::GridTooCoarse { got: 9, min: 10 });
    }

    #[test]
    fn synthesized_disk_passes() {
        let d = standard_disk(1024, 1.0).unwrap();
        let r = verify(&d, &Tolerances::default()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!((r.boundary_length - 1.0).abs() < 1e-12);
        assert!(r.min_k > 0.0 || r.min_k == 0.0);
        assert!((r.pole_slope - 1.0).abs() < 1e-10);
    }

    #[test]
    fn flat_bump_disk_passes() {
        let d = synthesize_standard_disk(|x| Shape::FlatBump.eval(x), 1024, 1.0).unwrap();
        assert!(verify(&d, &Tolerances::default()).unwrap().passed());
    }

    #[test]
    fn invalid_shapes() {
        assert!(matches!(synthesize_standard_disk(|x| 0.5 - x, 200, 1.0), Err(Error::InvalidShape(_))));
        assert!(matches!(synthesize_standard_disk(|_| 0.0, 200, 1.0), Err(Error::InvalidShape(_))));
        assert!(matches!(standard_disk(50, 1.0), Err(Error::GridTooCoarse { .. })));
    }

    #[test]
    fn scale_is_homothety() {
        let d = standard_disk(512, 1.0).unwrap();
        assert_eq!(scale(&d, 1.0).unwrap(), d);
        let d2 = scale(&d, 2.0).unwrap();
        assert_eq!(d2.boundary_length(), 2.0 * d.boundary_length());
        let t = Tolerances::default();
        let (a, b) = (verify(&d, &t).unwrap(), verify(&d2, &t).unwrap());
        assert!((a.total_curvature - b.total_curvature).abs() < 1e-10);
        assert!((a.min_k - 4.0 * b.min_k).abs() <= 1e-12 * a.min_k.abs().max(1.0));
    }

    #[test]
    fn collar() {
        let t = Tolerances::default();
        let d = standard_disk(512, 1.0).unwrap();
        assert_eq!(attach_flat_collar(&d, 0.0, &t).unwrap(), d);
        let len = 100.0 * d.delta();
        let c = attach_flat_collar(&d, len, &t).unwrap();
        assert_eq!(c.boundary_length(), d.boundary_length());
        assert!((c.area() - d.area() - len * d.boundary_length()).abs() < 1e-12);
        let (a, b) = (verify(&d, &t).unwrap(), verify(&c, &t).unwrap());
        assert!(b.passed());
        assert!((a.total_curvature - b.total_curvature).abs() < 1e-10);
        assert!(matches!(
            attach_flat_collar(&hemisphere(512), 0.1, &t),
            Err(Error::BoundaryNotFlat { order: 2, .. })
        ));
    }
}
