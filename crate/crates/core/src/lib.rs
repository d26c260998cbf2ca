//! Entanglement dynamics of two non-interacting Jaynes-Cummings atoms.
//!
//! Each atom (A, B) sits in its own resonant single-mode cavity (a, b). With a
//! single excitation shared across the whole system the state lives in a
//! four-dimensional space spanned by `|↑↓00⟩, |↓↑00⟩, |↓↓10⟩, |↓↓01⟩`, whose
//! amplitudes are called `x, y, z, k` throughout.
//!
//! * [`model`] holds the parameters, the state type and the partial-Bell
//!   initial states.
//! * [`closed_form`] evolves states analytically at resonance.
//! * [`concurrence`] builds reduced two-qubit density matrices and evaluates
//!   the Wootters concurrence.
//! * [`oracle`] is an independent numerical integrator over the subspace and
//!   over the full truncated Fock space.
//! * [`analysis`] turns the periodicity, zero-count and phase-shift laws into
//!   executable checks and produces time scans.

pub mod analysis;
pub mod closed_form;
pub mod concurrence;
pub mod error;
pub mod model;
pub mod oracle;

pub use num_complex::Complex64;

pub use analysis::{
    aperiodicity_witness, classify_ratio, count_zeros, count_zeros_with, max_shift_mismatch,
    minimal_period, period, period_with, scan, scan_shifted, verify_shift_identity, LawVerdict,
    PairCheck, PeriodReport, RatioClass, RatioKind, ScanMode, ScanResult, ShiftReport,
    DEFAULT_MAX_DEN, DEFAULT_RATIO_TOL,
};
pub use closed_form::{
    concurrence_closed, dressed_eigensystem, evolve, q_envelope, DressedEigensystem,
};
pub use concurrence::{
    concurrence_ab_fast, reduce, wootters, wootters_x, QubitPair, TwoQubitDensity,
};
pub use error::{Error, Result};
pub use model::{
    initial_state, norm, subsystem_populations, BellFamily, CouplingParams, PreparedState,
    SingleExcState,
};
pub use oracle::{
    build_full_hamiltonian, default_dt, embed, integrate_full, integrate_full_at,
    integrate_subspace, integrate_subspace_at, project, subspace_hamiltonian, FullBasisIndex,
    FullHamiltonian, FullStateVector, Picture,
};
