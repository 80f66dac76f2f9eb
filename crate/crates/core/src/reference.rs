//! Closed-form fractional Laplacians used for validation, and error norms.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::special::gamma;
use crate::{Error, Result, C64};

/// Discrete error norms of one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    /// `sqrt((1/N) Σ |e_j|²)`.
    pub l2: f64,
    pub linf: f64,
    pub n: usize,
    pub r: Option<usize>,
    pub alpha: Option<f64>,
}

impl ErrorReport {
    /// Tags the report with the run's `r` and `α`.
    pub fn with_run(mut self, r: usize, alpha: f64) -> Self {
        self.r = Some(r);
        self.alpha = Some(alpha);
        self
    }
}

/// Normalized discrete L² and max-norm of `approx − exact`.
pub fn error_norms(approx: &[C64], exact: &[C64]) -> Result<ErrorReport> {
    if approx.len() != exact.len() {
        return Err(Error::LengthMismatch {
            expected: exact.len(),
            actual: approx.len(),
            context: "error_norms",
        });
    }
    if approx.is_empty() {
        return Err(Error::EmptyInput("error_norms"));
    }
    let (mut sq, mut linf) = (0.0f64, 0.0f64);
    for (a, e) in approx.iter().zip(exact) {
        let d = (a - e).norm();
        sq += d * d;
        linf = linf.max(d);
    }
    let n = approx.len();
    Ok(ErrorReport {
        // Clamp rounding so that l2 ≤ linf always holds.
        l2: (sq / n as f64).sqrt().min(linf),
        linf,
        n,
        r: None,
        alpha: None,
    })
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::param("alpha", format!("must lie in (0, 2), got {alpha}")));
    }
    Ok(())
}

/// `u(x) = (ix − 1)/(ix + 1)`, which equals `e^{2is}` for `x = cot s`.
pub fn rational(x: f64) -> C64 {
    C64::new(-1.0, x) / C64::new(1.0, x)
}

/// `(-Δ)^{α/2}` of [`rational`] at `x = cot s`, `L = 1`:
/// `−2Γ(1+α) / (i cot s + 1)^{1+α}` on the principal branch.
pub fn exact_rational(alpha: f64, s: f64) -> Result<C64> {
    check_alpha(alpha)?;
    if !(s > 0.0 && s < PI) {
        return Err(Error::Domain {
            what: "s",
            value: s,
            domain: "(0, π)",
        });
    }
    // 1 + i cot s = e^{i(π/2 − s)} / sin s, with argument in (−π/2, π/2).
    let p = 1.0 + alpha;
    Ok(C64::from_polar(-2.0 * gamma(p) * s.sin().powf(p), -p * (FRAC_PI_2 - s)))
}

/// `(-Δ)^{α/2}` of [`rational`] at a real point `x`.
pub fn exact_rational_at(alpha: f64, x: f64) -> Result<C64> {
    check_alpha(alpha)?;
    let p = 1.0 + alpha;
    Ok(C64::from_polar(-2.0 * gamma(p) * x.hypot(1.0).powf(-p), -p * x.atan()))
}

/// `(-Δ)^{α/2} erf(x) = (2^{1+α}/π) Γ((1+α)/2) x ₁F₁((1+α)/2; 3/2; −x²)`.
pub fn exact_erf(alpha: f64, x: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let a = 0.5 * (1.0 + alpha);
    let m = kummer_1f1(a, 1.5, -x * x)?;
    Ok(2f64.powf(1.0 + alpha) / PI * gamma(a) * x * m)
}

/// Beyond this `|z|` the asymptotic expansion replaces the series.
pub const KUMMER_SERIES_LIMIT: f64 = 60.0;
const MAX_TERMS: usize = 100_000;

/// Confluent hypergeometric `₁F₁(a; b; z)` for `b > 0`.
///
/// Strategy:
///
/// * `z > 0`, or `b − a` a non-positive integer: ascending series. In the
///   second case the Kummer-transformed series below terminates.
/// * `−60 ≤ z ≤ 0`: Kummer's transformation `e^z ₁F₁(b−a; b; −z)`. For
///   `b ≥ a` its terms are all positive, so nothing cancels.
/// * `z < −60`: the algebraic part of the large-`|z|` expansion
///   `Γ(b)/Γ(b−a) (−z)^{−a} Σ (a)_k (a−b+1)_k / k! (−z)^{−k}`, summed until
///   the terms stop decreasing. The exponential part is `O(e^z)` relative
///   to it and is dropped.
pub fn kummer_1f1(a: f64, b: f64, z: f64) -> Result<f64> {
    if !(b > 0.0) || !a.is_finite() || z.is_nan() {
        return Err(Error::param("b", format!("need finite a and b > 0, got a = {a}, b = {b}")));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if a == b {
        return Ok(z.exp());
    }
    let c = b - a;
    let terminating = c <= 0.0 && c == c.floor();
    if z > 0.0 {
        return ascending(a, b, z);
    }
    if terminating || -z <= KUMMER_SERIES_LIMIT {
        return Ok(z.exp() * ascending(c, b, -z)?);
    }
    asymptotic(a, b, z)
}

fn ascending(a: f64, b: f64, z: f64) -> Result<f64> {
    let (mut term, mut sum) = (1.0f64, 1.0f64);
    for k in 0..MAX_TERMS {
        let k = k as f64;
        term *= (a + k) / (b + k) * z / (k + 1.0);
        sum += term;
        if term == 0.0 || term.abs() <= f64::EPSILON * 0.25 * sum.abs() {
            return Ok(sum);
        }
        if !sum.is_finite() {
            break;
        }
    }
    Err(Error::NonConvergence { what: "1F1 series", z })
}

fn asymptotic(a: f64, b: f64, z: f64) -> Result<f64> {
    let x = -z;
    let (mut term, mut sum) = (1.0f64, 1.0f64);
    for k in 0..MAX_TERMS {
        let k = k as f64;
        let next = term * (a + k) * (a - b + 1.0 + k) / ((k + 1.0) * x);
        if next == 0.0 {
            break;
        }
        if next.abs() >= term.abs() {
            // Optimal truncation reached before full precision.
            if term.abs() > 1e-12 * sum.abs() {
                return Err(Error::NonConvergence { what: "1F1 asymptotic expansion", z });
            }
            break;
        }
        term = next;
        sum += term;
        if term.abs() <= f64::EPSILON * 0.25 * sum.abs() {
            break;
        }
    }
    Ok(gamma(b) / gamma(b - a) * x.powf(-a) * sum)
}
