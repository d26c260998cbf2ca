//! Exact resonant evolution inside the single-excitation subspace.
//!
//! Everything here is in the interaction picture: the pairs `(x, z)` and
//! `(y, k)` each undergo an independent Rabi rotation at `g_a` and `g_b`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{BellFamily, CouplingParams, SingleExcState};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dressed states of the two independent JC systems with one excitation.
#[derive(Debug, Clone, PartialEq)]
pub struct DressedEigensystem {
    /// `[+g_a, -g_a, +g_b, -g_b]`.
    pub eigenvalues: [f64; 4],
    pub eigenvectors: [SingleExcState; 4],
}

pub fn dressed_eigensystem(params: &CouplingParams) -> Result<DressedEigensystem> {
    params.require_resonant()?;
    let h = FRAC_1_SQRT_2;
    Ok(DressedEigensystem {
        eigenvalues: [params.g_a(), -params.g_a(), params.g_b(), -params.g_b()],
        eigenvectors: [
            SingleExcState::from_real(h, 0.0, h, 0.0),
            SingleExcState::from_real(h, 0.0, -h, 0.0),
            SingleExcState::from_real(0.0, h, 0.0, h),
            SingleExcState::from_real(0.0, h, 0.0, -h),
        ],
    })
}

/// Propagates `state0` by time `t` (negative `t` runs backwards).
pub fn evolve(state0: &SingleExcState, params: &CouplingParams, t: f64) -> Result<SingleExcState> {
    params.require_resonant()?;
    if !t.is_finite() {
        return Err(Error::InvalidArgument(format!("t must be finite, got {t}")));
    }
    Ok(rotate(state0, params, t))
}

fn rotate(s: &SingleExcState, params: &CouplingParams, t: f64) -> SingleExcState {
    let (sa, ca) = (params.g_a() * t).sin_cos();
    let (sb, cb) = (params.g_b() * t).sin_cos();
    SingleExcState::new(
        s.x * ca - I * s.z * sa,
        s.y * cb - I * s.k * sb,
        s.z * ca - I * s.x * sa,
        s.k * cb - I * s.y * sb,
    )
}

/// Analytic atom-atom concurrence for a partial-Bell initial state.
///
/// AB gives `|cos(g_a t) cos(g_b t)|`, ab `|sin sin|`, Ab `|cos sin|`,
/// Ba `|sin cos|`, all scaled by `|sin 2θ|`. Aa and Bb are identically zero.
pub fn q_envelope(family: BellFamily, theta: f64, params: &CouplingParams, t: f64) -> Result<f64> {
    params.require_resonant()?;
    let amp = (2.0 * theta).sin().abs();
    let (sa, ca) = (params.g_a() * t).sin_cos();
    let (sb, cb) = (params.g_b() * t).sin_cos();
    let v = match family {
        BellFamily::AB => ca * cb,
        BellFamily::ab => sa * sb,
        BellFamily::Ab => ca * sb,
        BellFamily::Ba => sa * cb,
        BellFamily::Aa | BellFamily::Bb => 0.0,
    };
    Ok(amp * v.abs())
}

/// Cross terms `x₀* z₀`, `y₀* k₀` must be real for the modulus formula to
/// hold; this allows for rounding in the initial amplitudes.
const CROSS_TERM_TOL: f64 = 1e-12;

/// `2|x(t)||y(t)|` with the moduli taken straight from the initial moduli.
///
/// Valid when `x₀* z₀` and `y₀* k₀` are real, which covers every
/// partial-Bell state and any state with real amplitudes. Anything else is
/// rejected; evolve it and use [`crate::concurrence`] instead.
pub fn concurrence_closed(
    state0: &SingleExcState,
    params: &CouplingParams,
    t: f64,
) -> Result<f64> {
    params.require_resonant()?;
    let cross_a = (state0.x.conj() * state0.z).im;
    let cross_b = (state0.y.conj() * state0.k).im;
    if cross_a.abs() > CROSS_TERM_TOL || cross_b.abs() > CROSS_TERM_TOL {
        return Err(Error::UnsupportedConfiguration(format!(
            "initial amplitudes carry relative phases (Im x0*z0 = {cross_a:e}, \
             Im y0*k0 = {cross_b:e}); the modulus formula does not apply"
        )));
    }
    let (sa, ca) = (params.g_a() * t).sin_cos();
    let (sb, cb) = (params.g_b() * t).sin_cos();
    let mod_x = (state0.x.norm_sqr() * ca * ca + state0.z.norm_sqr() * sa * sa).sqrt();
    let mod_y = (state0.y.norm_sqr() * cb * cb + state0.k.norm_sqr() * sb * sb).sqrt();
    Ok(2.0 * mod_x * mod_y)
}
