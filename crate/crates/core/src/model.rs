//! Physical parameters, the single-excitation state and the partial-Bell
//! initial states.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance on `|norm - 1|` for a state to count as normalized.
pub const NORM_TOL: f64 = 1e-12;

/// Inputs whose norm falls below this carry no usable direction.
pub const MIN_NORM: f64 = 1e-9;

/// Default relative tolerance used by [`CouplingParams::resonant`].
pub const DEFAULT_RESONANCE_TOL: f64 = 1e-12;

/// Coupling strengths and bare frequencies of the double Jaynes-Cummings model.
///
/// All quantities are angular frequencies (rad per unit time). The couplings
/// must be strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingParams {
    g_a: f64,
    g_b: f64,
    omega_atom: f64,
    omega_cavity: f64,
    resonance_tol: f64,
}

impl CouplingParams {
    pub fn new(g_a: f64, g_b: f64, omega_atom: f64, omega_cavity: f64) -> Result<Self> {
        for (name, v) in [("g_a", g_a), ("g_b", g_b)] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be finite and > 0, got {v}"
                )));
            }
        }
        for (name, v) in [("omega_atom", omega_atom), ("omega_cavity", omega_cavity)] {
            if !v.is_finite() {
                return Err(Error::InvalidArgument(format!("{name} must be finite, got {v}")));
            }
        }
        Ok(Self {
            g_a,
            g_b,
            omega_atom,
            omega_cavity,
            resonance_tol: DEFAULT_RESONANCE_TOL,
        })
    }

    /// Resonant parameters with unit bare frequencies.
    ///
    /// The bare frequency never enters the single-excitation dynamics at
    /// resonance, so the choice only matters for the other excitation sectors
    /// of the full-space oracle.
    pub fn on_resonance(g_a: f64, g_b: f64) -> Result<Self> {
        Self::new(g_a, g_b, 1.0, 1.0)
    }

    pub fn with_resonance_tolerance(mut self, tol: f64) -> Result<Self> {
        if !tol.is_finite() || tol < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "resonance tolerance must be finite and >= 0, got {tol}"
            )));
        }
        self.resonance_tol = tol;
        Ok(self)
    }

    pub fn g_a(&self) -> f64 {
        self.g_a
    }

    pub fn g_b(&self) -> f64 {
        self.g_b
    }

    pub fn omega_atom(&self) -> f64 {
        self.omega_atom
    }

    pub fn omega_cavity(&self) -> f64 {
        self.omega_cavity
    }

    /// Atom minus cavity frequency.
    pub fn detuning(&self) -> f64 {
        self.omega_atom - self.omega_cavity
    }

    pub fn g_max(&self) -> f64 {
        self.g_a.max(self.g_b)
    }

    pub fn g_min(&self) -> f64 {
        self.g_a.min(self.g_b)
    }

    /// True when atom and cavity frequencies agree within the configured
    /// relative tolerance.
    pub fn resonant(&self) -> bool {
        let scale = self.omega_atom.abs().max(self.omega_cavity.abs());
        self.detuning().abs() <= self.resonance_tol * scale
    }

    pub(crate) fn require_resonant(&self) -> Result<()> {
        if self.resonant() {
            Ok(())
        } else {
            Err(Error::UnsupportedConfiguration(format!(
                "closed-form evolution requires resonance, got omega_atom={} omega_cavity={}",
                self.omega_atom, self.omega_cavity
            )))
        }
    }
}

/// Amplitudes over `|↑↓00⟩, |↓↑00⟩, |↓↓10⟩, |↓↓01⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingleExcState {
    /// Atom A excited.
    pub x: Complex64,
    /// Atom B excited.
    pub y: Complex64,
    /// One photon in cavity a.
    pub z: Complex64,
    /// One photon in cavity b.
    pub k: Complex64,
}

impl SingleExcState {
    /// Raw constructor. The amplitudes are stored as given.
    pub const fn new(x: Complex64, y: Complex64, z: Complex64, k: Complex64) -> Self {
        Self { x, y, z, k }
    }

    pub fn from_real(x: f64, y: f64, z: f64, k: f64) -> Self {
        Self::new(x.into(), y.into(), z.into(), k.into())
    }

    /// Builds a state and rescales it to unit norm.
    ///
    /// Rejects non-finite amplitudes and inputs whose norm is below
    /// [`MIN_NORM`].
    pub fn normalized(x: Complex64, y: Complex64, z: Complex64, k: Complex64) -> Result<Self> {
        Self::new(x, y, z, k).normalize()
    }

    pub fn normalize(self) -> Result<Self> {
        if !self.amplitudes().iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite amplitude".into()));
        }
        let n = norm(&self);
        if n < MIN_NORM {
            return Err(Error::InvalidArgument(format!(
                "state norm {n:e} is below {MIN_NORM:e}"
            )));
        }
        Ok(self.scale(1.0 / n))
    }

    pub fn amplitudes(&self) -> [Complex64; 4] {
        [self.x, self.y, self.z, self.k]
    }

    pub fn from_amplitudes(a: [Complex64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s, self.k * s)
    }

    pub fn is_normalized(&self) -> bool {
        (norm(self) - 1.0).abs() <= NORM_TOL
    }

    /// Largest componentwise `|a_i - b_i|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.amplitudes()
            .iter()
            .zip(other.amplitudes().iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub(crate) fn require_normalized(&self, tol: f64) -> Result<()> {
        let n = norm(self);
        if (n - 1.0).abs() > tol {
            Err(Error::InvalidState(format!(
                "state is not normalized (norm = {n})"
            )))
        } else {
            Ok(())
        }
    }
}

/// The six partial-Bell families `cosθ|·⟩ + sinθ|·⟩`, labelled by the two
/// subsystems that share the excitation. Upper case names an atom, lower
/// case a cavity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BellFamily {
    /// Atoms A and B.
    AB,
    /// Cavities a and b.
    #[allow(non_camel_case_types)]
    ab,
    /// Atom A and its own cavity.
    Aa,
    /// Atom B and its own cavity.
    Bb,
    /// Atom A and cavity b.
    Ab,
    /// Atom B and cavity a.
    Ba,
}

impl BellFamily {
    pub const ALL: [BellFamily; 6] = [
        BellFamily::AB,
        BellFamily::ab,
        BellFamily::Aa,
        BellFamily::Bb,
        BellFamily::Ab,
        BellFamily::Ba,
    ];

    /// The families with non-trivial atom-atom concurrence.
    pub const ENTANGLING: [BellFamily; 4] =
        [BellFamily::AB, BellFamily::ab, BellFamily::Ab, BellFamily::Ba];

    pub fn label(self) -> &'static str {
        match self {
            BellFamily::AB => "AB",
            BellFamily::ab => "ab",
            BellFamily::Aa => "Aa",
            BellFamily::Bb => "Bb",
            BellFamily::Ab => "Ab",
            BellFamily::Ba => "Ba",
        }
    }

    /// Aa and Bb keep one JC system in its ground state, so the two atoms
    /// never share an excitation.
    pub fn atoms_never_entangled(self) -> bool {
        matches!(self, BellFamily::Aa | BellFamily::Bb)
    }
}

impl fmt::Display for BellFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for BellFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "AB" | "BA" => Ok(BellFamily::AB),
            "ab" | "ba" => Ok(BellFamily::ab),
            "Aa" | "aA" => Ok(BellFamily::Aa),
            "Bb" | "bB" => Ok(BellFamily::Bb),
            "Ab" | "bA" => Ok(BellFamily::Ab),
            // "aB" is how the shift identities label this family.
            "Ba" | "aB" => Ok(BellFamily::Ba),
            other => Err(Error::InvalidArgument(format!(
                "unknown Bell family {other:?} (expected one of AB, ab, Aa, Bb, Ab, Ba)"
            ))),
        }
    }
}

/// A Bell family together with its mixing angle (radians).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PreparedState {
    pub family: BellFamily,
    pub theta: f64,
}

impl PreparedState {
    pub fn new(family: BellFamily, theta: f64) -> Self {
        Self { family, theta }
    }
}

/// Amplitudes of `cosθ|first⟩ + sinθ|second⟩` for the prepared family.
pub fn initial_state(prep: PreparedState) -> Result<SingleExcState> {
    let theta = prep.theta;
    if !theta.is_finite() {
        return Err(Error::InvalidArgument(format!("theta must be finite, got {theta}")));
    }
    let (c, s) = (theta.cos(), theta.sin());
    let st = match prep.family {
        BellFamily::AB => SingleExcState::from_real(c, s, 0.0, 0.0),
        BellFamily::ab => SingleExcState::from_real(0.0, 0.0, c, s),
        BellFamily::Aa => SingleExcState::from_real(c, 0.0, s, 0.0),
        BellFamily::Bb => SingleExcState::from_real(0.0, c, 0.0, s),
        BellFamily::Ab => SingleExcState::from_real(c, 0.0, 0.0, s),
        BellFamily::Ba => SingleExcState::from_real(0.0, c, s, 0.0),
    };
    Ok(st)
}

pub fn norm(state: &SingleExcState) -> f64 {
    state
        .amplitudes()
        .iter()
        .map(|a| a.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Excitation probability held by the A-a system and by the B-b system.
pub fn subsystem_populations(state: &SingleExcState) -> (f64, f64) {
    (
        state.x.norm_sqr() + state.z.norm_sqr(),
        state.y.norm_sqr() + state.k.norm_sqr(),
    )
}
