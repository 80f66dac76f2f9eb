//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use fraclap_core::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Tanh-sinh quadrature of `f` on `[a, b]`, halving the step until two levels
/// agree to `tol` (absolute) or the finest level is reached.
pub fn tanh_sinh(f: &dyn Fn(f64) -> C64, a: f64, b: f64, tol: f64) -> C64 {
    if b <= a {
        return C64::new(0.0, 0.0);
    }
    let half = 0.5 * (b - a);
    // Nodes stay at least ~1e-300 away from the ends.
    let t_max = 6.0;
    let node = |t: f64| -> Option<(f64, f64)> {
        let u = 0.5 * PI * t.sinh();
        let w = half * 0.5 * PI * t.cosh() / u.cosh().powi(2);
        let x = if u < 0.0 {
            a + (b - a) / (1.0 + (-2.0 * u).exp())
        } else {
            b - (b - a) / (1.0 + (2.0 * u).exp())
        };
        (x > a && x < b && w > 0.0).then_some((x, w))
    };
    let eval = |t: f64| node(t).map_or(C64::new(0.0, 0.0), |(x, w)| f(x) * w);

    let mut h = 0.5;
    let mut sum = eval(0.0);
    let mut k = 1;
    while k as f64 * h <= t_max {
        sum += eval(k as f64 * h) + eval(-(k as f64) * h);
        k += 1;
    }
    let mut estimate = sum * h;
    for _ in 0..9 {
        h *= 0.5;
        // Only the new odd nodes are evaluated.
        let mut k = 1;
        while k as f64 * h <= t_max {
            sum += eval(k as f64 * h) + eval(-(k as f64) * h);
            k += 2;
        }
        let next = sum * h;
        let done = (next - estimate).norm() < tol;
        estimate = next;
        if done {
            break;
        }
    }
    estimate
}

/// `c_α` from an independent Γ implementation.
pub fn c_alpha(alpha: f64) -> f64 {
    alpha * 2f64.powf(alpha - 1.0) * libm::tgamma(0.5 + 0.5 * alpha)
        / (PI.sqrt() * libm::tgamma(1.0 - 0.5 * alpha))
}

/// `(c_α/α) ∫_0^∞ (u_x(x−y) − u_x(x+y)) / y^α dy`, where `q(y)` returns the
/// difference quotient `(u_x(x−y) − u_x(x+y)) / y` without cancellation and
/// `peak` is where the integrand concentrates.
pub fn frac_lap_oracle(alpha: f64, q: &dyn Fn(f64) -> C64, peak: f64) -> C64 {
    let tol = 1e-13;
    // [0, 1] with w = y^{2−α}: y^{1−α} dy = dw / (2−α).
    let p = 2.0 - alpha;
    let mut total = tanh_sinh(&|w: f64| q(w.powf(1.0 / p)) / p, 0.0, 1.0, tol);

    let regular = |y: f64| q(y) * y.powf(1.0 - alpha);
    let peak = peak.abs();
    let mut cuts: Vec<f64> = vec![1.0, peak - 8.0, peak - 1.0, peak, peak + 1.0, peak + 8.0, 2.0 * peak + 16.0];
    cuts.retain(|&c| c >= 1.0);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    for w in cuts.windows(2) {
        total += tanh_sinh(&regular, w[0], w[1], tol);
    }
    // Tail [B, ∞) with y = B/τ.
    let b = *cuts.last().unwrap();
    // Beyond y = 1e30·B every integrand here is far below double precision.
    let tail = |tau: f64| {
        if tau < 1e-30 {
            C64::new(0.0, 0.0)
        } else {
            regular(b / tau) * (b / (tau * tau))
        }
    };
    total += tanh_sinh(&tail, 0.0, 1.0, tol);
    total * (c_alpha(alpha) / alpha)
}

/// Difference quotient for `u = (ix−1)/(ix+1)`, `u_x = 2i/(ix+1)²`:
/// `−8A / (A² + y²)²` with `A = ix + 1`.
pub fn rational_q(x: f64) -> impl Fn(f64) -> C64 {
    let a = C64::new(1.0, x);
    move |y| -8.0 * a / (a * a + y * y).powi(2)
}

/// Difference quotient for `u = erf`, `u_x = (2/√π)e^{−x²}`.
pub fn erf_q(x: f64) -> impl Fn(f64) -> C64 {
    move |y: f64| {
        if y == 0.0 {
            return C64::new(8.0 / PI.sqrt() * x * (-x * x).exp(), 0.0);
        }
        let d = if x >= 0.0 {
            (-(x - y).powi(2)).exp() * -(-4.0 * x * y).exp_m1()
        } else {
            -(-(x + y).powi(2)).exp() * -(4.0 * x * y).exp_m1()
        };
        C64::new(2.0 / PI.sqrt() * d / y, 0.0)
    }
}

/// Difference quotient for `u = e^{−x²}` at `x = 0`: `4e^{−y²}`.
pub fn gaussian_q_at_zero() -> impl Fn(f64) -> C64 {
    |y: f64| C64::new(4.0 * (-y * y).exp(), 0.0)
}

/// `max|a − b| / max|b|`.
pub fn max_rel_diff(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let num = a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    let den = b.iter().map(|y| y.norm()).fold(0.0, f64::max);
    if den == 0.0 {
        num
    } else {
        num / den
    }
}

pub fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<C64> {
    (0..len)
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Least-squares slope of `log2 y` against `log2 x`.
pub fn log2_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.log2()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.log2()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    cov / var
}
