//! The fractional Laplacian for `α ∈ (0,1) ∪ (1,2)`.
//!
//! In the mapped variable,
//!
//! ```text
//! (-Δ)^{α/2} u(s) = c_α |sin s|^{α−1} / (L^α α(1−α))
//!                   · ∫_0^π sin^α(η) |sin(s−η)|^{1−α} f(η) dη
//! ```
//!
//! with `f = sin·u_ss + 2cos·u_s`. The integral is the singular integral with
//! `β = α`, `γ = 1 − α`; the prefactor simplifies to
//! `sin^{α−1}(s_j) / (2 L^α Γ(2−α) cos(πα/2))`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::fastconv::{fast_singular_integral, FastSingularIntegral};
use crate::grid::GridSpec;
use crate::quadrature::{MidpointSamples, SingularParams};
use crate::special::gamma;
use crate::spectral::SpectralBuilder;
use crate::{Error, Result, C64};

/// `α` values closer than this to 1 are rejected.
pub const ALPHA_ONE_EXCLUSION: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracLapParams {
    alpha: f64,
    grid: GridSpec,
}

impl FracLapParams {
    pub fn new(alpha: f64, grid: GridSpec) -> Result<Self> {
        validate_alpha(alpha)?;
        Ok(Self { alpha, grid })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    /// `(β, γ) = (α, 1 − α)`.
    pub fn singular_params(&self) -> SingularParams {
        SingularParams::new(self.alpha, 1.0 - self.alpha).expect("alpha validated")
    }
}

pub(crate) fn validate_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::param("alpha", format!("must lie in (0, 2), got {alpha}")));
    }
    if (alpha - 1.0).abs() < ALPHA_ONE_EXCLUSION {
        return Err(Error::param("alpha", "α = 1 is not supported"));
    }
    Ok(())
}

/// Normalization constant `c_α = α 2^{α−1} Γ(1/2 + α/2) / (√π Γ(1 − α/2))`.
pub fn c_alpha(alpha: f64) -> f64 {
    alpha * 2f64.powf(alpha - 1.0) * gamma(0.5 + 0.5 * alpha) / (PI.sqrt() * gamma(1.0 - 0.5 * alpha))
}

/// `sin^{α−1}(s_j) / (L^α · 2Γ(2−α) · cos(πα/2))`.
pub fn prefactor(p: &FracLapParams, j: usize) -> f64 {
    let a = p.alpha;
    let s = p.grid.output_node(j);
    s.sin().powf(a - 1.0) / (p.grid.scale().powf(a) * 2.0 * gamma(2.0 - a) * (PI * a / 2.0).cos())
}

fn check_grid(f: &MidpointSamples, p: &FracLapParams) -> Result<()> {
    if f.grid() != p.grid() {
        return Err(Error::param("samples", "grid differs from the operator grid"));
    }
    Ok(())
}

/// One-shot `(-Δ)^{α/2}u(x_j)`, `j = 0..N`, from midpoint samples of `f`.
pub fn apply(f: &MidpointSamples, p: &FracLapParams) -> Result<Vec<C64>> {
    check_grid(f, p)?;
    let mut out = fast_singular_integral(f, &p.singular_params())?;
    for (j, v) in out.iter_mut().enumerate() {
        *v *= prefactor(p, j);
    }
    Ok(out)
}

/// One-shot evaluation from samples `u(x_j)` only (pseudospectral `f`).
pub fn apply_to_samples(u: &[C64], p: &FracLapParams) -> Result<Vec<C64>> {
    let f = SpectralBuilder::new(p.grid)?.f_from_samples(u)?;
    apply(&MidpointSamples::new(f, p.grid)?, p)
}

/// Planned operator for repeated application on one grid.
///
/// Caches the `f`-independent kernel transforms and prefactors; the
/// pseudospectral builder is created on first use.
#[derive(Debug)]
pub struct FractionalLaplacian {
    params: FracLapParams,
    plan: FastSingularIntegral,
    prefactors: Vec<f64>,
    spectral: OnceLock<SpectralBuilder>,
}

impl FractionalLaplacian {
    pub fn new(params: FracLapParams) -> Result<Self> {
        let plan = FastSingularIntegral::new(params.grid, params.singular_params())?;
        let prefactors = (0..params.grid.n()).map(|j| prefactor(&params, j)).collect();
        Ok(Self {
            params,
            plan,
            prefactors,
            spectral: OnceLock::new(),
        })
    }

    pub fn params(&self) -> &FracLapParams {
        &self.params
    }

    pub fn apply(&self, f: &MidpointSamples) -> Result<Vec<C64>> {
        check_grid(f, &self.params)?;
        self.apply_values(f.values())
    }

    /// Applies to a raw slice of `2rN` midpoint values of `f`.
    pub fn apply_values(&self, f: &[C64]) -> Result<Vec<C64>> {
        let mut out = self.plan.apply_values(f)?;
        for (v, c) in out.iter_mut().zip(&self.prefactors) {
            *v *= c;
        }
        Ok(out)
    }

    /// Applies to samples `u(x_j)`, building `f` pseudospectrally.
    pub fn apply_to_samples(&self, u: &[C64]) -> Result<Vec<C64>> {
        let builder = match self.spectral.get() {
            Some(b) => b,
            None => {
                let b = SpectralBuilder::new(self.params.grid)?;
                self.spectral.get_or_init(|| b)
            }
        };
        self.apply_values(&builder.f_from_samples(u)?)
    }
}
