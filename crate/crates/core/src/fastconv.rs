//! `O(rN log N)` evaluation of the sums computed by
//! [`singular_integral_direct`](crate::quadrature::singular_integral_direct).
//!
//! Writing the cell index as `n = 2rl + q` with `q ∈ 0..2r` turns each of
//! `A_{1,j}` and `A_{2,j}` into `2r` discrete convolutions in `l`:
//!
//! ```text
//! A_{1,j} = C Σ_q Σ_l K₁(l, q) L₁(j − l, q)
//! A_{2,j} = C Σ_q Σ_l K₂(l, q) L₂(j − l, q)
//! ```
//!
//! with `C = h^{β+γ+1}/((β+1)(γ+1))`. The `K` columns carry `f`, the `L`
//! columns only depend on `(N, r, β, γ)`. Every column is zero-padded to a
//! power-of-two length `nrows`, transformed, multiplied pointwise and summed
//! over `q` in the frequency domain; one inverse transform finishes the job.

use crate::dft::Transform;
use crate::grid::GridSpec;
use crate::quadrature::{sinc_half_index, MidpointSamples, SingularParams};
use crate::{Error, Result, C64};

/// Padded column length: the smallest power of two `≥ ⌈N/2⌉ + N − 1`, and at least 2.
pub fn padded_rows(n: usize) -> usize {
    (n.div_ceil(2) + n - 1).next_power_of_two().max(2)
}

/// Kernel columns for every residue `q`, zero-padded to `nrows`.
#[derive(Debug, Clone)]
pub struct KernelColumns {
    pub nrows: usize,
    pub k1: Vec<Vec<C64>>,
    pub k2: Vec<Vec<C64>>,
    pub l1: Vec<Vec<C64>>,
    pub l2: Vec<Vec<C64>>,
}

/// Index bookkeeping shared by the one-shot and the planned evaluators.
#[derive(Debug, Clone)]
struct Layout {
    n: usize,
    r: usize,
    cells: i64,
    h: f64,
    beta: f64,
    gamma: f64,
    nrows: usize,
}

impl Layout {
    fn new(grid: &GridSpec, p: &SingularParams) -> Self {
        Self {
            n: grid.n(),
            r: grid.r(),
            cells: grid.cells() as i64,
            h: grid.h(),
            beta: p.beta(),
            gamma: p.gamma(),
            nrows: padded_rows(grid.n()),
        }
    }

    /// Number of `l` values for residue `q`: `⌈N/2⌉` for `q < r`, `⌊N/2⌋` otherwise.
    fn active_rows(&self, q: usize) -> usize {
        if q < self.r {
            self.n.div_ceil(2)
        } else {
            self.n / 2
        }
    }

    /// Endpoint weights for the first half, `n ∈ 0..rN`:
    /// `(sin s̃/s̃)^β [(n+1)^{β+1} − n^{β+1}]` at `s̃ = s̃_{n+1/2}`.
    fn left_weights(&self) -> Vec<f64> {
        let bp = self.beta + 1.0;
        (0..self.cells / 2)
            .map(|n| {
                let ends = ((n + 1) as f64).powf(bp) - (n as f64).powf(bp);
                sinc_half_index(2 * n + 1, self.cells, self.h).powf(self.beta) * ends
            })
            .collect()
    }

    /// Endpoint weights for the second half, indexed by `n' = n − rN ∈ 0..rN`:
    /// `(sin s̃/(π − s̃))^β [(rN−n')^{β+1} − (rN−n'−1)^{β+1}]`.
    fn right_weights(&self) -> Vec<f64> {
        let bp = self.beta + 1.0;
        let half = self.cells / 2;
        (0..half)
            .map(|np| {
                let m = half - np;
                let ends = (m as f64).powf(bp) - ((m - 1) as f64).powf(bp);
                sinc_half_index(2 * m - 1, self.cells, self.h).powf(self.beta) * ends
            })
            .collect()
    }

    /// Moving-singularity factor for the signed index offset `d = n − (2j+1)r`:
    /// `(sin t/t)^γ [sgn(d+1)|d+1|^{γ+1} − sgn(d)|d|^{γ+1}]`, `t = h(d + 1/2)`.
    fn moving(&self, d: i64) -> f64 {
        let gp = self.gamma + 1.0;
        let signed = |k: i64| (k.signum() as f64) * (k.unsigned_abs() as f64).powf(gp);
        sinc_half_index(2 * d + 1, self.cells, self.h).powf(self.gamma) * (signed(d + 1) - signed(d))
    }

    /// Fills `buf` with the wrap-around layout of an `L` column: row `i < N`
    /// holds `m = i`, rows `nrows − N_a + 1 ..` hold `m = i − nrows`.
    fn fill_l(&self, buf: &mut [C64], q: usize, offset: i64) {
        buf.fill(C64::new(0.0, 0.0));
        let na = self.active_rows(q);
        let (q, r) = (q as i64, self.r as i64);
        let value = |m: i64| C64::new(self.moving(offset + q - r - 2 * r * m), 0.0);
        for (i, slot) in buf.iter_mut().enumerate().take(self.n) {
            *slot = value(i as i64);
        }
        for i in (self.nrows + 1).saturating_sub(na)..self.nrows {
            buf[i] = value(i as i64 - self.nrows as i64);
        }
    }

    /// Fills `buf` with a `K` column: `weights[2rm+q]·f[base + 2rm+q]` for `m < N_a(q)`.
    fn fill_k(&self, buf: &mut [C64], q: usize, weights: &[f64], f: &[C64], base: usize) {
        buf.fill(C64::new(0.0, 0.0));
        for m in 0..self.active_rows(q) {
            let n = 2 * self.r * m + q;
            buf[m] = f[base + n] * weights[n];
        }
    }

    /// `h^{β+γ+1} / ((β+1)(γ+1))`, the factor pulled out of every cell weight.
    fn scale(&self) -> f64 {
        self.h.powf(self.beta + self.gamma + 1.0) / ((self.beta + 1.0) * (self.gamma + 1.0))
    }

    fn finish(&self, transform: &Transform, mut acc: Vec<C64>) -> Vec<C64> {
        transform.inverse_in_place(&mut acc);
        let c = self.scale();
        acc.truncate(self.n);
        acc.iter_mut().for_each(|z| *z *= c);
        acc
    }
}

fn accumulate_product(acc: &mut [C64], a: &[C64], b: &[C64]) {
    for ((s, x), y) in acc.iter_mut().zip(a).zip(b) {
        *s += x * y;
    }
}

/// Builds all `8r` kernel columns (before transforming).
///
/// Memory is `8r·nrows` complex values; meant for inspection and tests. The
/// evaluators stream columns instead.
pub fn build_kernels(f: &MidpointSamples, p: &SingularParams) -> KernelColumns {
    let lay = Layout::new(f.grid(), p);
    let (w1, w2) = (lay.left_weights(), lay.right_weights());
    let half = f.grid().cells() / 2;
    let rn = half as i64;
    let column = || vec![C64::new(0.0, 0.0); lay.nrows];
    let mut out = KernelColumns {
        nrows: lay.nrows,
        k1: Vec::new(),
        k2: Vec::new(),
        l1: Vec::new(),
        l2: Vec::new(),
    };
    for q in 0..2 * lay.r {
        let (mut k1, mut k2, mut l1, mut l2) = (column(), column(), column(), column());
        lay.fill_k(&mut k1, q, &w1, f.values(), 0);
        lay.fill_k(&mut k2, q, &w2, f.values(), half);
        lay.fill_l(&mut l1, q, 0);
        lay.fill_l(&mut l2, q, rn);
        out.k1.push(k1);
        out.k2.push(k2);
        out.l1.push(l1);
        out.l2.push(l2);
    }
    out
}

/// One-shot fast evaluation of `A_{1,j} + A_{2,j}`, `j = 0..N`.
///
/// Columns are generated and transformed one residue at a time, so the peak
/// memory is three vectors of length `nrows` on top of the input.
pub fn fast_singular_integral(f: &MidpointSamples, p: &SingularParams) -> Result<Vec<C64>> {
    let lay = Layout::new(f.grid(), p);
    let transform = Transform::new(lay.nrows)?;
    let (w1, w2) = (lay.left_weights(), lay.right_weights());
    let half = f.grid().cells() / 2;
    let mut acc = vec![C64::new(0.0, 0.0); lay.nrows];
    let mut kbuf = acc.clone();
    let mut lbuf = acc.clone();
    for q in 0..2 * lay.r {
        if lay.active_rows(q) == 0 {
            continue;
        }
        for (weights, base, offset) in [(&w1, 0, 0), (&w2, half, half as i64)] {
            lay.fill_k(&mut kbuf, q, weights, f.values(), base);
            lay.fill_l(&mut lbuf, q, offset);
            transform.forward_in_place(&mut kbuf);
            transform.forward_in_place(&mut lbuf);
            accumulate_product(&mut acc, &kbuf, &lbuf);
        }
    }
    Ok(lay.finish(&transform, acc))
}

/// Fast evaluator with the `f`-independent work done once.
///
/// Holds the transformed `L` columns and the endpoint weights for fixed
/// `(N, r, β, γ)`; each [`apply`](Self::apply) then costs `4r` forward
/// transforms and one inverse.
#[derive(Debug, Clone)]
pub struct FastSingularIntegral {
    grid: GridSpec,
    params: SingularParams,
    layout: Layout,
    transform: Transform,
    left: Vec<f64>,
    right: Vec<f64>,
    l1_hat: Vec<Vec<C64>>,
    l2_hat: Vec<Vec<C64>>,
}

impl FastSingularIntegral {
    pub fn new(grid: GridSpec, params: SingularParams) -> Result<Self> {
        let layout = Layout::new(&grid, &params);
        let transform = Transform::new(layout.nrows)?;
        let rn = (grid.cells() / 2) as i64;
        let mut l1_hat = Vec::with_capacity(2 * grid.r());
        let mut l2_hat = Vec::with_capacity(2 * grid.r());
        for q in 0..2 * grid.r() {
            for (store, offset) in [(&mut l1_hat, 0), (&mut l2_hat, rn)] {
                let mut col = vec![C64::new(0.0, 0.0); layout.nrows];
                if layout.active_rows(q) > 0 {
                    layout.fill_l(&mut col, q, offset);
                    transform.forward_in_place(&mut col);
                }
                store.push(col);
            }
        }
        Ok(Self {
            left: layout.left_weights(),
            right: layout.right_weights(),
            grid,
            params,
            layout,
            transform,
            l1_hat,
            l2_hat,
        })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn params(&self) -> &SingularParams {
        &self.params
    }

    /// Padded transform length.
    pub fn nrows(&self) -> usize {
        self.layout.nrows
    }

    pub fn apply(&self, f: &MidpointSamples) -> Result<Vec<C64>> {
        if f.grid() != &self.grid {
            return Err(Error::param("samples", "grid differs from the planned grid"));
        }
        self.apply_values(f.values())
    }

    /// Same as [`apply`](Self::apply) on a raw slice of `2rN` midpoint values.
    pub fn apply_values(&self, f: &[C64]) -> Result<Vec<C64>> {
        if f.len() != self.grid.cells() {
            return Err(Error::LengthMismatch {
                expected: self.grid.cells(),
                actual: f.len(),
                context: "midpoint samples must hold 2rN values",
            });
        }
        let lay = &self.layout;
        let half = self.grid.cells() / 2;
        let mut acc = vec![C64::new(0.0, 0.0); lay.nrows];
        let mut kbuf = acc.clone();
        for q in 0..2 * lay.r {
            if lay.active_rows(q) == 0 {
                continue;
            }
            lay.fill_k(&mut kbuf, q, &self.left, f, 0);
            self.transform.forward_in_place(&mut kbuf);
            accumulate_product(&mut acc, &kbuf, &self.l1_hat[q]);
            lay.fill_k(&mut kbuf, q, &self.right, f, half);
            self.transform.forward_in_place(&mut kbuf);
            accumulate_product(&mut acc, &kbuf, &self.l2_hat[q]);
        }
        Ok(lay.finish(&self.transform, acc))
    }
}
