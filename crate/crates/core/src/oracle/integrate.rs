//! Fixed-step classical Runge-Kutta propagation of `i dψ/dt = H ψ`.
//!
//! The step count for an interval is `ceil(length / dt)` with the step
//! shrunk to divide the interval evenly, so identical inputs always replay
//! identical arithmetic.

use num_complex::Complex64;

use super::hamiltonian::{subspace_hamiltonian, FullHamiltonian};
use super::state::FullStateVector;
use crate::error::{Error, Result};
use crate::model::{CouplingParams, SingleExcState};

/// Largest accepted `dt · max(g_a, g_b)`.
pub const MAX_STEP_PHASE: f64 = 0.1;

/// Largest tolerated change of the norm over an integration.
pub const MAX_NORM_DRIFT: f64 = 1e-9;

/// Largest accepted `dt · ‖H‖` for the full-space propagator. RK4 is stable
/// along the imaginary axis up to 2√2.
const MAX_STEP_SPECTRAL: f64 = 2.0;

/// `1e-3 / max(g_a, g_b)`.
pub fn default_dt(params: &CouplingParams) -> f64 {
    1e-3 / params.g_max()
}

fn check_step(params: &CouplingParams, dt: f64) -> Result<()> {
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::InvalidArgument(format!("dt must be finite and > 0, got {dt}")));
    }
    let phase = dt * params.g_max();
    if phase > MAX_STEP_PHASE {
        return Err(Error::InvalidArgument(format!(
            "dt * max(g_a, g_b) = {phase} exceeds {MAX_STEP_PHASE}"
        )));
    }
    Ok(())
}

fn check_times(times: &[f64]) -> Result<()> {
    let mut prev = 0.0;
    for &t in times {
        if !t.is_finite() || t < prev {
            return Err(Error::InvalidArgument(format!(
                "sample times must be finite, non-negative and non-decreasing (got {t} after {prev})"
            )));
        }
        prev = t;
    }
    Ok(())
}

struct Rk4 {
    k1: Vec<Complex64>,
    k2: Vec<Complex64>,
    k3: Vec<Complex64>,
    k4: Vec<Complex64>,
    tmp: Vec<Complex64>,
}

impl Rk4 {
    fn new(dim: usize) -> Self {
        let z = vec![Complex64::new(0.0, 0.0); dim];
        Self { k1: z.clone(), k2: z.clone(), k3: z.clone(), k4: z.clone(), tmp: z }
    }

    fn step<F>(&mut self, f: &F, psi: &mut [Complex64], h: f64)
    where
        F: Fn(&[Complex64], &mut [Complex64]),
    {
        let Rk4 { k1, k2, k3, k4, tmp } = self;
        f(psi, k1);
        for ((t, p), k) in tmp.iter_mut().zip(psi.iter()).zip(k1.iter()) {
            *t = p + k * (0.5 * h);
        }
        f(tmp, k2);
        for ((t, p), k) in tmp.iter_mut().zip(psi.iter()).zip(k2.iter()) {
            *t = p + k * (0.5 * h);
        }
        f(tmp, k3);
        for ((t, p), k) in tmp.iter_mut().zip(psi.iter()).zip(k3.iter()) {
            *t = p + k * h;
        }
        f(tmp, k4);
        let w = h / 6.0;
        for (i, p) in psi.iter_mut().enumerate() {
            *p += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * w;
        }
    }

    /// Advances `psi` by `length` in steps no longer than `dt`.
    fn advance<F>(&mut self, f: &F, psi: &mut [Complex64], length: f64, dt: f64)
    where
        F: Fn(&[Complex64], &mut [Complex64]),
    {
        if length <= 0.0 {
            return;
        }
        let steps = (length / dt).ceil().max(1.0) as u64;
        let h = length / steps as f64;
        for _ in 0..steps {
            self.step(f, psi, h);
        }
    }
}

fn vec_norm(psi: &[Complex64]) -> f64 {
    psi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Propagates through each sample time in turn, checking and removing norm
/// drift at every sample.
fn propagate<F>(
    f: F,
    psi0: &[Complex64],
    times: &[f64],
    dt: f64,
    mut emit: impl FnMut(&[Complex64]),
) -> Result<()>
where
    F: Fn(&[Complex64], &mut [Complex64]),
{
    check_times(times)?;
    let mut psi = psi0.to_vec();
    let reference = vec_norm(&psi);
    let mut rk = Rk4::new(psi.len());
    let mut now = 0.0;
    for &t in times {
        if t > now {
            rk.advance(&f, &mut psi, t - now, dt);
            let n = vec_norm(&psi);
            let drift = (n - reference).abs();
            if drift > MAX_NORM_DRIFT {
                return Err(Error::NumericalFailure(format!(
                    "norm drifted by {drift:e} by t = {t}"
                )));
            }
            let rescale = reference / n;
            psi.iter_mut().for_each(|a| *a *= rescale);
            now = t;
        }
        emit(&psi);
    }
    Ok(())
}

fn subspace_generator(params: &CouplingParams) -> impl Fn(&[Complex64], &mut [Complex64]) {
    let h = subspace_hamiltonian(params);
    move |psi: &[Complex64], out: &mut [Complex64]| {
        for (r, o) in out.iter_mut().enumerate() {
            let hv: Complex64 = (0..4).map(|c| h[(r, c)] * psi[c]).sum();
            *o = Complex64::new(hv.im, -hv.re);
        }
    }
}

/// Steps the four amplitude equations `i ẋ = g_a z`, `i ż = g_a x − Δ z`,
/// `i ẏ = g_b k`, `i k̇ = g_b y − Δ k` to `t_final`.
pub fn integrate_subspace(
    state0: &SingleExcState,
    params: &CouplingParams,
    t_final: f64,
    dt: f64,
) -> Result<SingleExcState> {
    Ok(integrate_subspace_at(state0, params, &[t_final], dt)?[0])
}

/// States at each of the non-decreasing, non-negative `times`, from one
/// continuous trajectory.
pub fn integrate_subspace_at(
    state0: &SingleExcState,
    params: &CouplingParams,
    times: &[f64],
    dt: f64,
) -> Result<Vec<SingleExcState>> {
    check_step(params, dt)?;
    let mut out = Vec::with_capacity(times.len());
    propagate(subspace_generator(params), &state0.amplitudes(), times, dt, |psi| {
        out.push(SingleExcState::new(psi[0], psi[1], psi[2], psi[3]))
    })?;
    Ok(out)
}

fn check_full(state0: &FullStateVector, h: &FullHamiltonian, dt: f64) -> Result<()> {
    check_step(h.params(), dt)?;
    if state0.cutoff() != h.cutoff() {
        return Err(Error::InvalidArgument(format!(
            "state cutoff {} does not match Hamiltonian cutoff {}",
            state0.cutoff(),
            h.cutoff()
        )));
    }
    let spectral = dt * h.row_sum_norm();
    if spectral > MAX_STEP_SPECTRAL {
        return Err(Error::InvalidArgument(format!(
            "dt * |H| = {spectral} exceeds {MAX_STEP_SPECTRAL}"
        )));
    }
    Ok(())
}

/// Schrödinger evolution in the full truncated space.
pub fn integrate_full(
    state0: &FullStateVector,
    h: &FullHamiltonian,
    t_final: f64,
    dt: f64,
) -> Result<FullStateVector> {
    Ok(integrate_full_at(state0, h, &[t_final], dt)?.pop().expect("one sample"))
}

pub fn integrate_full_at(
    state0: &FullStateVector,
    h: &FullHamiltonian,
    times: &[f64],
    dt: f64,
) -> Result<Vec<FullStateVector>> {
    check_full(state0, h, dt)?;
    let mut out = Vec::with_capacity(times.len());
    let f = |psi: &[Complex64], o: &mut [Complex64]| h.apply_generator(psi, o);
    propagate(f, state0.amplitudes(), times, dt, |psi| {
        let mut s = state0.clone();
        s.amplitudes_mut().copy_from_slice(psi);
        out.push(s)
    })?;
    Ok(out)
}
