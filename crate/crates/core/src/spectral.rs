//! Midpoint samples of the integrand `f(s) = sin(s)·u_ss(s) + 2cos(s)·u_s(s)`.
//!
//! Either from analytic `u_s`, `u_ss`, or pseudospectrally from the values of
//! `u` at the output nodes. In the latter case `u` is extended evenly about
//! `s = π` to a `2π`-periodic function, expanded in `e^{iks}`,
//! `k ∈ −N..N`, Krasny-filtered, zero-padded to `k ∈ −2rN..2rN`, and its
//! derivatives are evaluated at the `4rN` midpoints of `[0, 2π)` with one
//! transform each.

use std::f64::consts::PI;

use crate::dft::Transform;
use crate::grid::GridSpec;
use crate::quadrature::MidpointSamples;
use crate::{Error, Result, C64};

/// Fourier coefficients `û(k)`, `k ∈ −N..N`, stored in transform order:
/// slot `p` holds `k = p` for `p < N` and `k = p − 2N` otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCoefficients {
    coeffs: Vec<C64>,
    modes: usize,
}

impl SpectralCoefficients {
    /// Half-width `N`: modes run over `−N..N`.
    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.coeffs
    }

    /// `û(k)`; zero outside `−N..N`.
    pub fn get(&self, k: i64) -> C64 {
        let n = self.modes as i64;
        if k >= n || k < -n {
            return C64::new(0.0, 0.0);
        }
        self.coeffs[k.rem_euclid(2 * n) as usize]
    }

    fn wavenumber(&self, p: usize) -> i64 {
        if p < self.modes {
            p as i64
        } else {
            p as i64 - 2 * self.modes as i64
        }
    }

    /// Evaluates `Σ_k û(k) e^{iks}` at a point.
    pub fn eval(&self, s: f64) -> C64 {
        (0..self.coeffs.len())
            .map(|p| self.coeffs[p] * C64::from_polar(1.0, self.wavenumber(p) as f64 * s))
            .sum()
    }
}

/// Relative Krasny threshold: machine epsilon times the largest `|û(k)|`.
pub fn default_threshold(c: &SpectralCoefficients) -> f64 {
    f64::EPSILON * c.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Sets every coefficient with `|û(k)| < threshold` to exactly zero.
pub fn krasny_filter(mut c: SpectralCoefficients, threshold: f64) -> SpectralCoefficients {
    for z in c.coeffs.iter_mut() {
        if z.norm() < threshold {
            *z = C64::new(0.0, 0.0);
        }
    }
    c
}

/// `values[n] = sin(s̃)·uss(s̃) + 2cos(s̃)·us(s̃)` at every midpoint.
pub fn f_from_analytic(
    us: impl Fn(f64) -> C64,
    uss: impl Fn(f64) -> C64,
    g: &GridSpec,
) -> MidpointSamples {
    MidpointSamples::from_fn(*g, |s| uss(s) * s.sin() + us(s) * (2.0 * s.cos()))
}

/// Coefficients from `u(s_j)`, `j = 0..N`, after the even extension
/// `u(s_{2N−1−j}) = u(s_j)` about `s = π`. Krasny-filtered.
pub fn coefficients_from_samples(u_half: &[C64]) -> Result<SpectralCoefficients> {
    if u_half.is_empty() {
        return Err(Error::EmptyInput("coefficients_from_samples"));
    }
    let full: Vec<C64> = u_half.iter().chain(u_half.iter().rev()).copied().collect();
    coefficients_from_extended(&full)
}

/// Coefficients from `u(s_j)`, `j = 0..2N`, on the full period. Krasny-filtered.
pub fn coefficients_from_extended(u_full: &[C64]) -> Result<SpectralCoefficients> {
    let raw = raw_coefficients(u_full, &Transform::new(u_full.len().max(1))?)?;
    let threshold = default_threshold(&raw);
    Ok(krasny_filter(raw, threshold))
}

fn raw_coefficients(u_full: &[C64], transform: &Transform) -> Result<SpectralCoefficients> {
    if u_full.is_empty() {
        return Err(Error::EmptyInput("coefficients_from_extended"));
    }
    if u_full.len() % 2 != 0 {
        return Err(Error::param(
            "samples",
            format!("full-period sample count must be even, got {}", u_full.len()),
        ));
    }
    let len = u_full.len();
    let modes = len / 2;
    let mut coeffs = u_full.to_vec();
    transform.forward_in_place(&mut coeffs);
    let mut c = SpectralCoefficients { coeffs, modes };
    for p in 0..len {
        let k = c.wavenumber(p) as f64;
        c.coeffs[p] *= C64::from_polar(1.0 / len as f64, -k * PI / len as f64);
    }
    Ok(c)
}

/// `u_s` and `u_ss` at the `2rN` midpoints in `(0, π)`.
pub fn derivatives_at_midpoints(
    c: &SpectralCoefficients,
    g: &GridSpec,
) -> Result<(Vec<C64>, Vec<C64>)> {
    if c.modes() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            actual: c.modes(),
            context: "coefficient half-width must equal the grid N",
        });
    }
    let transform = Transform::new(2 * g.cells())?;
    Ok((
        derivative(c, g, &transform, 1),
        derivative(c, g, &transform, 2),
    ))
}

/// `Σ_k (ik)^order û(k) e^{ik s̃}` at `s̃ = s̃_{n+1/2}`, `n = 0..2rN`.
fn derivative(c: &SpectralCoefficients, g: &GridSpec, transform: &Transform, order: u32) -> Vec<C64> {
    let len = transform.len();
    let mut buf = vec![C64::new(0.0, 0.0); len];
    for p in 0..c.coeffs.len() {
        let z = c.coeffs[p];
        if z.norm_sqr() == 0.0 {
            continue;
        }
        let k = c.wavenumber(p);
        let ik = C64::new(0.0, k as f64).powu(order);
        let slot = k.rem_euclid(len as i64) as usize;
        buf[slot] = ik * z * C64::from_polar(1.0, k as f64 * PI / len as f64);
    }
    transform.backward_in_place(&mut buf);
    buf.truncate(g.cells());
    buf.shrink_to_fit();
    buf
}

/// Reusable pipeline `u(s_j) ↦ f(s̃_{n+1/2})` for one grid.
#[derive(Debug, Clone)]
pub struct SpectralBuilder {
    grid: GridSpec,
    coarse: Transform,
    fine: Transform,
    sin_mid: Vec<f64>,
    cos_mid: Vec<f64>,
}

impl SpectralBuilder {
    pub fn new(grid: GridSpec) -> Result<Self> {
        let mids: Vec<f64> = (0..grid.cells()).map(|n| grid.midpoint(n)).collect();
        Ok(Self {
            coarse: Transform::new(2 * grid.n())?,
            fine: Transform::new(2 * grid.cells())?,
            sin_mid: mids.iter().map(|s| s.sin()).collect(),
            cos_mid: mids.iter().map(|s| s.cos()).collect(),
            grid,
        })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    /// Filtered coefficients of the even extension of `u_half`.
    pub fn coefficients(&self, u_half: &[C64]) -> Result<SpectralCoefficients> {
        if u_half.len() != self.grid.n() {
            return Err(Error::LengthMismatch {
                expected: self.grid.n(),
                actual: u_half.len(),
                context: "samples of u at the output nodes",
            });
        }
        let full: Vec<C64> = u_half.iter().chain(u_half.iter().rev()).copied().collect();
        let raw = raw_coefficients(&full, &self.coarse)?;
        let threshold = default_threshold(&raw);
        Ok(krasny_filter(raw, threshold))
    }

    /// Midpoint values of `f` built from `u(s_j)`, `j = 0..N`.
    pub fn f_from_samples(&self, u_half: &[C64]) -> Result<Vec<C64>> {
        let c = self.coefficients(u_half)?;
        let us = derivative(&c, &self.grid, &self.fine, 1);
        let mut f = derivative(&c, &self.grid, &self.fine, 2);
        for (i, v) in f.iter_mut().enumerate() {
            *v = *v * self.sin_mid[i] + us[i] * (2.0 * self.cos_mid[i]);
        }
        Ok(f)
    }
}

/// One-shot form of [`SpectralBuilder::f_from_samples`].
pub fn f_from_samples(u_half: &[C64], g: &GridSpec) -> Result<MidpointSamples> {
    let values = SpectralBuilder::new(*g)?.f_from_samples(u_half)?;
    MidpointSamples::new(values, *g)
}
