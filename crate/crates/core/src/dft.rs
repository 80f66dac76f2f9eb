//! Discrete Fourier transforms with the convention
//! `v̂_p = Σ_m v_m e^{−2πimp/M}` and `v_m = (1/M) Σ_p v̂_p e^{2πimp/M}`.
//!
//! Any length is accepted; lengths with large prime factors go through
//! rustfft's Rader/Bluestein algorithms and stay `O(M log M)`.

use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use crate::{Error, Result, C64};

/// Planned transforms of one fixed length. Shareable across threads.
#[derive(Clone)]
pub struct Transform {
    len: usize,
    fwd: Arc<dyn Fft<f64>>,
    bwd: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for Transform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Transform").field("len", &self.len).finish()
    }
}

impl Transform {
    pub fn new(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::EmptyInput("dft plan"));
        }
        let mut planner = FftPlanner::new();
        Ok(Self {
            len,
            fwd: planner.plan_fft_forward(len),
            bwd: planner.plan_fft_inverse(len),
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Unnormalized forward transform in place.
    pub fn forward_in_place(&self, buf: &mut [C64]) {
        assert_eq!(buf.len(), self.len, "transform length mismatch");
        self.fwd.process(buf);
    }

    /// Unnormalized backward transform in place: `Σ_p v̂_p e^{2πimp/M}`.
    pub fn backward_in_place(&self, buf: &mut [C64]) {
        assert_eq!(buf.len(), self.len, "transform length mismatch");
        self.bwd.process(buf);
    }

    /// Normalized inverse in place (backward transform scaled by `1/M`).
    pub fn inverse_in_place(&self, buf: &mut [C64]) {
        self.backward_in_place(buf);
        let scale = 1.0 / self.len as f64;
        buf.iter_mut().for_each(|z| *z *= scale);
    }
}

/// Forward DFT of `v`.
pub fn forward(v: &[C64]) -> Result<Vec<C64>> {
    if v.is_empty() {
        return Err(Error::EmptyInput("dft::forward"));
    }
    let mut out = v.to_vec();
    Transform::new(v.len())?.forward_in_place(&mut out);
    Ok(out)
}

/// Inverse DFT of `v`, including the `1/M` factor.
pub fn inverse(v: &[C64]) -> Result<Vec<C64>> {
    if v.is_empty() {
        return Err(Error::EmptyInput("dft::inverse"));
    }
    let mut out = v.to_vec();
    Transform::new(v.len())?.inverse_in_place(&mut out);
    Ok(out)
}
