//! Reduced two-qubit states and the Wootters concurrence.
//!
//! Each of the four subsystems (atoms A, B and cavities a, b) is a qubit in
//! the single-excitation sector. A [`TwoQubitDensity`] is always written in
//! the product basis with the excited (or occupied) level first:
//! `{|11⟩, |10⟩, |01⟩, |00⟩}`, so for the atom pair this is
//! `{|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩}`.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, Matrix4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{norm, SingleExcState};

/// Tolerance on Hermiticity and unit trace.
pub const DENSITY_TOL: f64 = 1e-12;

/// Eigenvalues down to this are rounding noise and are clamped to zero.
pub const NEGATIVE_EIGEN_TOL: f64 = 1e-10;

/// States passed to [`reduce`] may deviate from unit norm by this much.
pub const STATE_NORM_TOL: f64 = 1e-9;

/// Eigenvalues of ρ below this are dropped when factoring `ρ = W W†`.
/// Exact zeros come out of the eigensolver at the 1e-17 level, and taking
/// their square root would inject ~1e-8 noise into the concurrence.
const RANK_TOL: f64 = 1e-14;

/// Which two of the four subsystems are kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QubitPair {
    AB,
    #[allow(non_camel_case_types)]
    ab,
    Aa,
    Bb,
    Ab,
    Ba,
}

// Subsystem slots in the occupation pattern [A, B, a, b].
const SLOT_A: usize = 0;
const SLOT_B: usize = 1;
const SLOT_CAV_A: usize = 2;
const SLOT_CAV_B: usize = 3;

// Which slot holds the excitation for x, y, z, k.
const EXCITED_SLOT: [usize; 4] = [SLOT_A, SLOT_B, SLOT_CAV_A, SLOT_CAV_B];

impl QubitPair {
    pub const ALL: [QubitPair; 6] = [
        QubitPair::AB,
        QubitPair::ab,
        QubitPair::Aa,
        QubitPair::Bb,
        QubitPair::Ab,
        QubitPair::Ba,
    ];

    fn slots(self) -> (usize, usize) {
        match self {
            QubitPair::AB => (SLOT_A, SLOT_B),
            QubitPair::ab => (SLOT_CAV_A, SLOT_CAV_B),
            QubitPair::Aa => (SLOT_A, SLOT_CAV_A),
            QubitPair::Bb => (SLOT_B, SLOT_CAV_B),
            QubitPair::Ab => (SLOT_A, SLOT_CAV_B),
            QubitPair::Ba => (SLOT_B, SLOT_CAV_A),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            QubitPair::AB => "AB",
            QubitPair::ab => "ab",
            QubitPair::Aa => "Aa",
            QubitPair::Bb => "Bb",
            QubitPair::Ab => "Ab",
            QubitPair::Ba => "Ba",
        }
    }
}

impl fmt::Display for QubitPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for QubitPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        QubitPair::ALL
            .into_iter()
            .find(|p| p.label() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown qubit pair {s:?}")))
    }
}

/// A validated 4×4 density matrix of two qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitDensity {
    entries: Matrix4<Complex64>,
}

impl TwoQubitDensity {
    /// Checks Hermiticity, unit trace and positivity (down to
    /// [`NEGATIVE_EIGEN_TOL`]).
    pub fn new(entries: Matrix4<Complex64>) -> Result<Self> {
        if entries.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidState("non-finite density matrix entry".into()));
        }
        let asym = (entries - entries.adjoint()).iter().map(|c| c.norm()).fold(0.0, f64::max);
        if asym > DENSITY_TOL {
            return Err(Error::InvalidState(format!(
                "density matrix is not Hermitian (max |ρ - ρ†| = {asym:e})"
            )));
        }
        let tr = entries.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > DENSITY_TOL {
            return Err(Error::InvalidState(format!("trace is {tr}, expected 1")));
        }
        let rho = Self { entries };
        let min_eig = rho.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min_eig < -NEGATIVE_EIGEN_TOL {
            return Err(Error::InvalidState(format!(
                "density matrix has eigenvalue {min_eig:e}"
            )));
        }
        Ok(rho)
    }

    pub fn entries(&self) -> &Matrix4<Complex64> {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let mut ev: Vec<f64> = self.entries.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        [ev[0], ev[1], ev[2], ev[3]]
    }

    /// True when everything off the diagonal and anti-diagonal vanishes
    /// within `tol`.
    pub fn is_x_state(&self, tol: f64) -> bool {
        (0..4).all(|r| {
            (0..4).all(|c| r == c || r + c == 3 || self.entries[(r, c)].norm() <= tol)
        })
    }
}

/// Basis index of a two-qubit pattern with the excited level first.
fn pair_index(first_excited: bool, second_excited: bool) -> usize {
    2 * usize::from(!first_excited) + usize::from(!second_excited)
}

/// Partial trace of `|Ψ⟩⟨Ψ|` over the two subsystems not in `pair`.
pub fn reduce(state: &SingleExcState, pair: QubitPair) -> Result<TwoQubitDensity> {
    let n = norm(state);
    if (n - 1.0).abs() > STATE_NORM_TOL {
        return Err(Error::InvalidState(format!("state is not normalized (norm = {n})")));
    }
    let amps = state.scale(1.0 / n).amplitudes();
    let (first, second) = pair.slots();

    // Each amplitude carries exactly one excitation. Record where it lands in
    // the kept pair and which environment slot (if any) holds it.
    let split: Vec<(usize, Option<usize>)> = EXCITED_SLOT
        .iter()
        .map(|&slot| {
            let idx = pair_index(slot == first, slot == second);
            let env = (slot != first && slot != second).then_some(slot);
            (idx, env)
        })
        .collect();

    let mut rho = Matrix4::<Complex64>::zeros();
    for (m, &(row, env_m)) in split.iter().enumerate() {
        for (n, &(col, env_n)) in split.iter().enumerate() {
            if env_m == env_n {
                rho[(row, col)] += amps[m] * amps[n].conj();
            }
        }
    }
    Ok(TwoQubitDensity { entries: rho })
}

/// `σ_y ⊗ σ_y` in the excited-first basis.
fn spin_flip() -> Matrix4<Complex64> {
    let mut s = Matrix4::<Complex64>::zeros();
    s[(0, 3)] = Complex64::new(-1.0, 0.0);
    s[(1, 2)] = Complex64::new(1.0, 0.0);
    s[(2, 1)] = Complex64::new(1.0, 0.0);
    s[(3, 0)] = Complex64::new(-1.0, 0.0);
    s
}

/// General Wootters concurrence `max(0, √λ₁ − √λ₂ − √λ₃ − √λ₄)`.
///
/// The `√λᵢ` of `ρ (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)` are obtained as the singular
/// values of `Wᵀ (σ_y⊗σ_y) W` with `ρ = W W†`, which avoids square roots of
/// near-zero eigenvalues of the non-Hermitian product.
pub fn wootters(rho: &TwoQubitDensity) -> Result<f64> {
    let eig = rho.entries.symmetric_eigen();
    let mut cols = Vec::with_capacity(4);
    for (i, &lam) in eig.eigenvalues.iter().enumerate() {
        if lam < -NEGATIVE_EIGEN_TOL {
            return Err(Error::NumericalConsistency(format!(
                "density matrix eigenvalue {lam:e} is below -{NEGATIVE_EIGEN_TOL:e}"
            )));
        }
        if lam > RANK_TOL {
            cols.push(eig.eigenvectors.column(i).into_owned() * Complex64::new(lam.sqrt(), 0.0));
        }
    }
    if cols.is_empty() {
        return Err(Error::NumericalConsistency("density matrix is numerically zero".into()));
    }
    let w = DMatrix::from_fn(4, cols.len(), |r, c| cols[c][r]);
    let flip = DMatrix::from_iterator(4, 4, spin_flip().iter().copied());
    let tau = w.transpose() * flip * &w;
    let mut sv: Vec<f64> = tau.singular_values().iter().copied().collect();
    sv.resize(4, 0.0);
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok((sv[0] - sv[1] - sv[2] - sv[3]).max(0.0))
}

/// X-state shortcut `2·max(0, |ρ₂₃| − √(ρ₁₁ρ₄₄), |ρ₁₄| − √(ρ₂₂ρ₃₃))`
/// (1-based indices). Rejects matrices that are not X-shaped.
pub fn wootters_x(rho: &TwoQubitDensity) -> Result<f64> {
    if !rho.is_x_state(DENSITY_TOL) {
        return Err(Error::InvalidArgument("density matrix is not of X type".into()));
    }
    let d = |i: usize| rho.entries[(i, i)].re.max(0.0);
    let inner = rho.entries[(1, 2)].norm() - (d(0) * d(3)).sqrt();
    let outer = rho.entries[(0, 3)].norm() - (d(1) * d(2)).sqrt();
    Ok(2.0 * inner.max(outer).max(0.0))
}

/// Atom-atom concurrence `2|x||y|` of a pure single-excitation state.
pub fn concurrence_ab_fast(state: &SingleExcState) -> Result<f64> {
    state.require_normalized(STATE_NORM_TOL)?;
    Ok(2.0 * state.x.norm() * state.y.norm())
}
