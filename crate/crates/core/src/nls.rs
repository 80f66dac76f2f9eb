//! Focusing fractional cubic Schrödinger equation
//! `i ψ_t = ½(-Δ)^{α/2}ψ − |ψ|²ψ`, integrated with classical RK4.
//!
//! The integrand of the operator is rebuilt pseudospectrally from the current
//! samples at every stage; the `ψ`-independent kernel transforms are planned
//! once in [`FractionalLaplacian`].

use std::f64::consts::PI;

use crate::fraclap::{FracLapParams, FractionalLaplacian};
use crate::{Error, Result, C64};

/// `ψ(x_j, t)` on the output nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionState {
    pub psi: Vec<C64>,
    pub t: f64,
    pub dt: f64,
    pub params: FracLapParams,
}

impl EvolutionState {
    pub fn new(psi: Vec<C64>, params: FracLapParams, dt: f64) -> Result<Self> {
        let n = params.grid().n();
        if psi.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: psi.len(),
                context: "initial wavefunction",
            });
        }
        if !(dt >= 0.0) || !dt.is_finite() {
            return Err(Error::param("dt", format!("must be finite and non-negative, got {dt}")));
        }
        Ok(Self {
            psi,
            t: 0.0,
            dt,
            params,
        })
    }
}

/// `M = ∫|ψ|² dx` by the midpoint rule in `s`: `(Lπ/N) Σ |ψ_j|² / sin²(s_j)`.
pub fn energy(state: &EvolutionState) -> f64 {
    let g = state.params.grid();
    let sum: f64 = state
        .psi
        .iter()
        .enumerate()
        .map(|(j, z)| z.norm_sqr() / g.output_node(j).sin().powi(2))
        .sum();
    g.scale() * PI / g.n() as f64 * sum
}

/// One classical RK4 step of `ψ' = rhs(ψ)`.
pub fn rk4_step_with(
    state: &EvolutionState,
    mut rhs: impl FnMut(&[C64]) -> Result<Vec<C64>>,
) -> Result<EvolutionState> {
    let dt = state.dt;
    let psi = &state.psi;
    let shifted = |k: &[C64], c: f64| -> Vec<C64> {
        psi.iter().zip(k).map(|(p, k)| p + k * c).collect()
    };
    let k1 = rhs(psi)?;
    let k2 = rhs(&shifted(&k1, 0.5 * dt))?;
    let k3 = rhs(&shifted(&k2, 0.5 * dt))?;
    let k4 = rhs(&shifted(&k3, dt))?;
    let psi = (0..psi.len())
        .map(|j| psi[j] + (k1[j] + (k2[j] + k3[j]) * 2.0 + k4[j]) * (dt / 6.0))
        .collect();
    Ok(EvolutionState {
        psi,
        t: state.t + dt,
        dt,
        params: state.params,
    })
}

/// Receives the energy log and state snapshots of a run.
pub trait SnapshotSink {
    fn record_energy(&mut self, t: f64, m: f64) -> Result<()>;
    fn snapshot(&mut self, t: f64, psi: &[C64], m: f64) -> Result<()>;
}

/// In-memory sink.
#[derive(Debug, Default, Clone)]
pub struct VecSink {
    pub energies: Vec<(f64, f64)>,
    pub snapshots: Vec<(f64, Vec<C64>, f64)>,
}

impl SnapshotSink for VecSink {
    fn record_energy(&mut self, t: f64, m: f64) -> Result<()> {
        self.energies.push((t, m));
        Ok(())
    }

    fn snapshot(&mut self, t: f64, psi: &[C64], m: f64) -> Result<()> {
        self.snapshots.push((t, psi.to_vec(), m));
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub steps: usize,
    pub m0: f64,
    /// `max_t |M(t) − M(0)|`.
    pub max_drift: f64,
    pub last: EvolutionState,
}

/// The evolution operator on one grid.
#[derive(Debug)]
pub struct Nls {
    op: FractionalLaplacian,
}

impl Nls {
    pub fn new(params: FracLapParams) -> Result<Self> {
        Ok(Self {
            op: FractionalLaplacian::new(params)?,
        })
    }

    pub fn params(&self) -> &FracLapParams {
        self.op.params()
    }

    /// `−i(½(-Δ)^{α/2}ψ − |ψ|²ψ)`.
    pub fn rhs(&self, psi: &[C64]) -> Result<Vec<C64>> {
        let lap = self.op.apply_to_samples(psi)?;
        Ok(lap
            .iter()
            .zip(psi)
            .map(|(l, p)| {
                let v = l * 0.5 - p * p.norm_sqr();
                C64::new(v.im, -v.re)
            })
            .collect())
    }

    pub fn rk4_step(&self, state: &EvolutionState) -> Result<EvolutionState> {
        rk4_step_with(state, |psi| self.rhs(psi))
    }

    /// Steps from `t = 0` to `t_end` (rounded to whole steps), logging `M` every
    /// step and snapshotting at `t = 0`, every `snapshot_every` steps and at the end.
    pub fn simulate(
        &self,
        psi0: Vec<C64>,
        dt: f64,
        t_end: f64,
        snapshot_every: usize,
        sink: &mut impl SnapshotSink,
    ) -> Result<RunSummary> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::param("dt", format!("must be positive, got {dt}")));
        }
        if !(t_end > 0.0) || !t_end.is_finite() {
            return Err(Error::param("t_end", format!("must be positive, got {t_end}")));
        }
        if snapshot_every == 0 {
            return Err(Error::param("snapshot_every", "must be at least 1"));
        }
        let steps = ((t_end / dt) - 1e-9).ceil().max(1.0) as usize;
        let mut state = EvolutionState::new(psi0, *self.params(), dt)?;
        check_finite(&state)?;
        let m0 = energy(&state);
        sink.record_energy(0.0, m0)?;
        sink.snapshot(0.0, &state.psi, m0)?;
        let mut max_drift = 0.0f64;
        for step in 1..=steps {
            state = self.rk4_step(&state)?;
            // Recompute from the step count so t does not accumulate rounding.
            state.t = step as f64 * dt;
            check_finite(&state)?;
            let m = energy(&state);
            max_drift = max_drift.max((m - m0).abs());
            sink.record_energy(state.t, m)?;
            if step % snapshot_every == 0 || step == steps {
                sink.snapshot(state.t, &state.psi, m)?;
            }
        }
        Ok(RunSummary {
            steps,
            m0,
            max_drift,
            last: state,
        })
    }
}

fn check_finite(state: &EvolutionState) -> Result<()> {
    match state.psi.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
        Some(index) => Err(Error::BlowUp {
            time: state.t,
            index,
        }),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GridSpec;

    fn params(n: usize, r: usize, scale: f64, alpha: f64) -> FracLapParams {
        FracLapParams::new(alpha, GridSpec::new(n, r, scale).unwrap()).unwrap()
    }

    fn gaussian(p: &FracLapParams) -> Vec<C64> {
        p.grid()
            .output_points()
            .iter()
            .map(|x| C64::new((-x * x).exp(), 0.0))
            .collect()
    }

    #[test]
    fn linear_surrogate_matches_taylor() {
        let lambda = C64::new(-0.3, 1.7);
        let dt = 0.2;
        let p = params(3, 1, 1.0, 0.5);
        let psi = vec![C64::new(1.0, 0.0), C64::new(0.5, -2.0), C64::new(0.0, 3.0)];
        let s = EvolutionState::new(psi.clone(), p, dt).unwrap();
        let next = rk4_step_with(&s, |v| Ok(v.iter().map(|z| z * lambda).collect())).unwrap();
        let z = lambda * dt;
        let factor = C64::new(1.0, 0.0) + z + z * z / 2.0 + z * z * z / 6.0 + z * z * z * z / 24.0;
        for (a, b) in next.psi.iter().zip(&psi) {
            assert!((a - b * factor).norm() < 1e-15);
        }
        assert_eq!(next.t, dt);
    }

    #[test]
    fn zero_step_is_identity() {
        let p = params(9, 2, 1.5, 1.5);
        let nls = Nls::new(p).unwrap();
        let s = EvolutionState::new(gaussian(&p), p, 0.0).unwrap();
        assert_eq!(nls.rk4_step(&s).unwrap().psi, s.psi);
    }

    #[test]
    fn rhs_trivial_cases() {
        let p = params(8, 2, 1.0, 0.7);
        let nls = Nls::new(p).unwrap();
        assert!(nls.rhs(&[C64::new(0.0, 0.0); 8]).unwrap().iter().all(|z| z.norm() == 0.0));
        let c = C64::new(0.6, -0.8) * 1.5;
        let out = nls.rhs(&[c; 8]).unwrap();
        let expected = C64::new(0.0, 1.0) * c.norm_sqr() * c;
        for z in out {
            assert!((z - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn energy_of_gaussian() {
        let exact = (PI / 2.0).sqrt();
        let p = params(4096, 1, 200.0, 1.99);
        let s = EvolutionState::new(gaussian(&p), p, 0.01).unwrap();
        assert!((energy(&s) - exact).abs() < 1e-12);
        let p2 = params(8192, 1, 200.0, 1.99);
        let s2 = EvolutionState::new(gaussian(&p2), p2, 0.01).unwrap();
        assert!((energy(&s) - energy(&s2)).abs() < 1e-12);
        let z = EvolutionState::new(vec![C64::new(0.0, 0.0); 4096], p, 0.01).unwrap();
        assert_eq!(energy(&z), 0.0);
    }

    #[test]
    fn one_step_two_snapshots() {
        let p = params(16, 2, 2.0, 1.99);
        let nls = Nls::new(p).unwrap();
        let mut sink = VecSink::default();
        let run = nls.simulate(gaussian(&p), 0.01, 0.01, 1, &mut sink).unwrap();
        assert_eq!(run.steps, 1);
        assert_eq!(sink.snapshots.len(), 2);
        assert_eq!(sink.snapshots[0].0, 0.0);
        assert_eq!(sink.snapshots[1].0, 0.01);
        assert_eq!(sink.energies.len(), 2);
        assert!(nls.simulate(gaussian(&p), 0.01, 0.0, 1, &mut sink).is_err());
        assert!(nls.simulate(gaussian(&p), 0.0, 1.0, 1, &mut sink).is_err());
    }

    #[test]
    fn blow_up_is_reported() {
        let p = params(5, 1, 1.0, 1.5);
        let nls = Nls::new(p).unwrap();
        let mut psi = gaussian(&p);
        psi[3] = C64::new(f64::NAN, 0.0);
        let err = nls.simulate(psi, 0.1, 1.0, 1, &mut VecSink::default()).unwrap_err();
        assert_eq!(err, Error::BlowUp { time: 0.0, index: 3 });
    }

    #[test]
    fn richardson_ratio_order_four() {
        let p = params(33, 2, 2.0, 1.5);
        let nls = Nls::new(p).unwrap();
        let t = 0.4;
        let run = |steps: usize| {
            let mut s = EvolutionState::new(gaussian(&p), p, t / steps as f64).unwrap();
            for _ in 0..steps {
                s = nls.rk4_step(&s).unwrap();
            }
            s.psi
        };
        let (a, b, c) = (run(4), run(8), run(16));
        let diff = |x: &[C64], y: &[C64]| x.iter().zip(y).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max);
        let ratio = diff(&a, &b) / diff(&b, &c);
        assert!((ratio - 16.0).abs() < 0.3 * 16.0, "ratio {ratio}");
    }
}
