//! Numerical reference implementation.
//!
//! Nothing here relies on the closed-form solution: the subspace integrator
//! steps the four coupled amplitude equations directly, and the full-space
//! integrator works with the complete two-atom, two-mode Hamiltonian on a
//! truncated Fock basis. Detuned parameters are accepted throughout.

mod hamiltonian;
mod integrate;
mod state;

pub use hamiltonian::{
    build_full_hamiltonian, subspace_hamiltonian, FullBasisIndex, FullHamiltonian, Picture,
};
pub use integrate::{
    default_dt, integrate_full, integrate_full_at, integrate_subspace, integrate_subspace_at,
    MAX_NORM_DRIFT, MAX_STEP_PHASE,
};
pub use state::{embed, project, FullStateVector};

/// Photon-number cutoff used when none is specified.
pub const DEFAULT_CUTOFF: usize = 2;
