//! Fractional Laplacian `(-Δ)^{α/2}` of functions defined on the whole real line.
//!
//! The real line is mapped onto `(0, π)` with `x = L·cot(s)`. The resulting
//! singular integral is discretized with a modified midpoint rule that
//! integrates the singular kernel factors exactly, and the quadrature sums are
//! evaluated as zero-padded FFT convolutions in `O(rN log N)` operations.
//!
//! Module map:
//!
//! * [`grid`]: the algebraic map and the two node families.
//! * [`dft`]: forward/inverse discrete Fourier transforms.
//! * [`quadrature`]: the modified midpoint rule and the direct `O(rN²)` evaluator.
//! * [`fastconv`]: the fast convolution evaluator of the same sums.
//! * [`spectral`]: building the integrand samples from `u_s`, `u_ss` or from samples of `u`.
//! * [`fraclap`]: prefactor and assembly of the operator.
//! * [`reference`]: exact solutions, `₁F₁`, error norms.
//! * [`nls`]: RK4 evolution of the focusing fractional cubic Schrödinger equation.

pub mod dft;
pub mod error;
pub mod fastconv;
pub mod fraclap;
pub mod grid;
pub mod nls;
pub mod quadrature;
pub mod reference;
pub mod special;
pub mod spectral;

pub use error::{Error, Result};
pub use fastconv::{fast_singular_integral, FastSingularIntegral};
pub use fraclap::{FracLapParams, FractionalLaplacian};
pub use grid::GridSpec;
pub use quadrature::{singular_integral_direct, MidpointSamples, SingularParams};
pub use reference::ErrorReport;

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex<f64>;
