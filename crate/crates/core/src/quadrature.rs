//! Modified midpoint rule and the direct evaluation of
//! `I(s_j) = ∫_0^π sin^β(η) |sin(η − s_j)|^γ f(η) dη`.
//!
//! On each cell the singular power factor is integrated exactly and the
//! smooth remainder is frozen at the cell midpoint. For `I(s_j)` the interval
//! is split at `π/2`; on `[0, π/2]` the factor `η^β` is exact and
//! `(sin η/η)^β` is smooth, on `[π/2, π]` the same holds for `(π − η)^β`.
//! The moving singularity `|η − s_j|^γ` is integrated exactly in both halves.

use crate::grid::{index_sign, GridSpec};
use crate::{Error, Result, C64};

/// Exponents of the kernel `sin^β(η) |sin(η − s)|^γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularParams {
    beta: f64,
    gamma: f64,
}

impl SingularParams {
    pub fn new(beta: f64, gamma: f64) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::param("beta", format!("must be > 0, got {beta}")));
        }
        if !(gamma.is_finite() && gamma > -1.0) {
            return Err(Error::param("gamma", format!("must be > -1, got {gamma}")));
        }
        Ok(Self { beta, gamma })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// `f` sampled at the `2rN` cell midpoints of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct MidpointSamples {
    values: Vec<C64>,
    grid: GridSpec,
}

impl MidpointSamples {
    pub fn new(values: Vec<C64>, grid: GridSpec) -> Result<Self> {
        if values.len() != grid.cells() {
            return Err(Error::LengthMismatch {
                expected: grid.cells(),
                actual: values.len(),
                context: "midpoint samples must hold 2rN values",
            });
        }
        Ok(Self { values, grid })
    }

    /// Samples `f(s̃_{n+1/2})` of a function given on `(0, π)`.
    pub fn from_fn(grid: GridSpec, f: impl Fn(f64) -> C64) -> Self {
        let values = (0..grid.cells()).map(|n| f(grid.midpoint(n))).collect();
        Self { values, grid }
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn into_values(self) -> Vec<C64> {
        self.values
    }
}

/// `sin(z)/z` with the removable singularity filled in.
pub fn sinc(z: f64) -> f64 {
    if z.abs() < 1e-8 {
        1.0 - z * z / 6.0
    } else {
        z.sin() / z
    }
}

/// `sin(t)/t` at `t = h·k/2`, where `cells·h = π`.
///
/// For `|t| > π/2` the sine is evaluated as `sin(π − |t|)` with `π − |t|`
/// formed from the integer `2·cells − |k|`, which keeps full relative accuracy
/// when `|t|` approaches `π`.
pub(crate) fn sinc_half_index(k: i64, cells: i64, h: f64) -> f64 {
    let ka = k.abs();
    if ka <= cells {
        sinc(0.5 * h * k as f64)
    } else {
        (0.5 * h * (2 * cells - ka) as f64).sin() / (0.5 * h * ka as f64)
    }
}

/// `|x|^p`, with `0^p = 0` for the positive exponents used here.
pub(crate) fn abs_pow(x: f64, p: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.abs().powf(p)
    }
}

/// Modified midpoint rule for `∫_a^b x^β f(x) dx` on `f_mid.len()` equal cells.
///
/// `f_mid[n]` holds `f(a + h(n + 1/2))`, `h = (b − a)/len`.
pub fn modified_midpoint(f_mid: &[C64], a: f64, b: f64, beta: f64) -> Result<C64> {
    if f_mid.is_empty() {
        return Err(Error::EmptyInput("modified_midpoint"));
    }
    if !(a >= 0.0 && b > a && b.is_finite()) {
        return Err(Error::param("interval", format!("need 0 <= a < b, got [{a}, {b}]")));
    }
    if beta == -1.0 || !beta.is_finite() {
        return Err(Error::param("beta", "must be finite and different from -1"));
    }
    if a == 0.0 && beta < -1.0 {
        return Err(Error::param("beta", "must be > -1 when a = 0"));
    }
    let len = f_mid.len();
    let p = beta + 1.0;
    let edge = |n: usize| a + (b - a) * n as f64 / len as f64;
    let mut lower = abs_pow(edge(0), p);
    let mut acc = C64::new(0.0, 0.0);
    for (n, f) in f_mid.iter().enumerate() {
        let upper = abs_pow(edge(n + 1), p);
        acc += f * ((upper - lower) / p);
        lower = upper;
    }
    Ok(acc)
}

/// `[sgn_next·|x_next|^{γ+1} − sgn_prev·|x_prev|^{γ+1}] / (γ+1)`, the exact
/// integral of `|x|^γ` over `[x_prev, x_next]` once the signs are known.
pub fn signed_power_difference(
    x_next: f64,
    x_prev: f64,
    gamma: f64,
    sign_next: i8,
    sign_prev: i8,
) -> Result<f64> {
    if gamma == -1.0 || !gamma.is_finite() {
        return Err(Error::param("gamma", "must be finite and different from -1"));
    }
    let p = gamma + 1.0;
    let term = |x: f64, s: i8| if s == 0 { 0.0 } else { f64::from(s) * x.abs().powf(p) };
    Ok((term(x_next, sign_next) - term(x_prev, sign_prev)) / p)
}

/// `A_{1,j} + A_{2,j}` for every `j` by the literal double sum, `O(rN²)`.
///
/// This is the reference the fast convolution is checked against.
pub fn singular_integral_direct(f: &MidpointSamples, p: &SingularParams) -> Vec<C64> {
    let g = f.grid();
    let (n_out, r) = (g.n(), g.r());
    let cells = g.cells();
    let half = cells / 2;
    let h = g.h();
    let (beta, gamma) = (p.beta(), p.gamma());
    let bp = beta + 1.0;

    let mut out = vec![C64::new(0.0, 0.0); n_out];
    for (n, fv) in f.values().iter().enumerate() {
        // Exact integral of the endpoint power over the cell, times the
        // smooth sinc factor at its midpoint.
        let endpoint = if n < half {
            let w = (abs_pow(g.cell_edge(n + 1), bp) - abs_pow(g.cell_edge(n), bp)) / bp;
            w * sinc_half_index(2 * n as i64 + 1, cells as i64, h).powf(beta)
        } else {
            let m = cells - n;
            let w = (abs_pow(h * m as f64, bp) - abs_pow(h * (m - 1) as f64, bp)) / bp;
            w * sinc_half_index(2 * m as i64 - 1, cells as i64, h).powf(beta)
        };
        let weighted = fv * (endpoint / h);
        for (j, o) in out.iter_mut().enumerate() {
            let (ni, ji, ri) = (n as i64, j as i64, r as i64);
            let d = ni - (2 * ji + 1) * ri;
            let moving = signed_power_difference(
                h * (d + 1) as f64,
                h * d as f64,
                gamma,
                index_sign(ni + 1, ji, ri),
                index_sign(ni, ji, ri),
            )
            .expect("gamma validated by SingularParams");
            let smooth = sinc_half_index(2 * d + 1, cells as i64, h).powf(gamma);
            *o += weighted * (moving * smooth);
        }
    }
    out
}
