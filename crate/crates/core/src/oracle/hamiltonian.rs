use nalgebra::{DMatrix, Matrix4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::CouplingParams;

/// Frame in which the full Hamiltonian is written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Picture {
    /// Bare frequencies kept on the diagonal.
    Lab,
    /// Frame rotating at the cavity frequency. Only the detuning
    /// `(ω - ω₀)/2 (σ_A^z + σ_B^z)` survives on the diagonal, which vanishes at
    /// resonance.
    Interaction,
}

/// Position in the product basis atom A ⊗ atom B ⊗ Fock(a) ⊗ Fock(b).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FullBasisIndex {
    pub atom_a_up: bool,
    pub atom_b_up: bool,
    pub n_a: usize,
    pub n_b: usize,
}

impl FullBasisIndex {
    pub fn new(atom_a_up: bool, atom_b_up: bool, n_a: usize, n_b: usize) -> Self {
        Self { atom_a_up, atom_b_up, n_a, n_b }
    }

    pub fn dim(cutoff: usize) -> usize {
        4 * (cutoff + 1) * (cutoff + 1)
    }

    /// `((atom_a·2 + atom_b)·(cutoff+1) + n_a)·(cutoff+1) + n_b` with ↑ = 1.
    pub fn linear(&self, cutoff: usize) -> usize {
        debug_assert!(self.n_a <= cutoff && self.n_b <= cutoff);
        let m = cutoff + 1;
        let atoms = 2 * usize::from(self.atom_a_up) + usize::from(self.atom_b_up);
        (atoms * m + self.n_a) * m + self.n_b
    }

    pub fn from_linear(idx: usize, cutoff: usize) -> Self {
        let m = cutoff + 1;
        let n_b = idx % m;
        let n_a = (idx / m) % m;
        let atoms = idx / (m * m);
        Self::new(atoms & 2 != 0, atoms & 1 != 0, n_a, n_b)
    }

    /// Total excitation count: photons plus excited atoms.
    pub fn excitations(&self) -> usize {
        self.n_a + self.n_b + usize::from(self.atom_a_up) + usize::from(self.atom_b_up)
    }
}

/// Dense Hamiltonian of the double JC model on a truncated Fock space.
#[derive(Debug, Clone)]
pub struct FullHamiltonian {
    matrix: DMatrix<Complex64>,
    params: CouplingParams,
    picture: Picture,
    cutoff: usize,
    // Nonzero entries as (row, col, value); each row has at most three.
    nonzeros: Vec<(usize, usize, Complex64)>,
}

impl FullHamiltonian {
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn params(&self) -> &CouplingParams {
        &self.params
    }

    pub fn picture(&self) -> Picture {
        self.picture
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Largest `|H_ij - conj(H_ji)|`.
    pub fn hermiticity_error(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint()).iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest entry of `[H, N]` with `N` the excitation-number operator.
    pub fn excitation_commutator_norm(&self) -> f64 {
        let n = self.excitation_diagonal();
        let mut worst = 0.0f64;
        for (r, c, v) in &self.nonzeros {
            worst = worst.max((v * (n[*c] - n[*r])).norm());
        }
        worst
    }

    /// Diagonal of `N = a†a + b†b + (σ_A^z + σ_B^z)/2 + 1`.
    pub fn excitation_diagonal(&self) -> Vec<f64> {
        (0..self.dim())
            .map(|i| FullBasisIndex::from_linear(i, self.cutoff).excitations() as f64)
            .collect()
    }

    /// Row-sum bound on the spectral radius.
    pub fn row_sum_norm(&self) -> f64 {
        self.matrix
            .row_iter()
            .map(|row| row.iter().map(|c| c.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `out = -i H psi`.
    pub(crate) fn apply_generator(&self, psi: &[Complex64], out: &mut [Complex64]) {
        out.iter_mut().for_each(|o| *o = Complex64::new(0.0, 0.0));
        for &(r, c, v) in &self.nonzeros {
            out[r] += v * psi[c];
        }
        for o in out.iter_mut() {
            *o = Complex64::new(o.im, -o.re);
        }
    }
}

/// Builds the double JC Hamiltonian
/// `ω/2 σ_A^z + ω/2 σ_B^z + ω₀ a†a + ω₀ b†b + g_A(aσ_A⁺ + a†σ_A⁻) + g_B(bσ_B⁺ + b†σ_B⁻)`
/// with photon numbers truncated at `cutoff`.
pub fn build_full_hamiltonian(
    params: &CouplingParams,
    cutoff: usize,
    picture: Picture,
) -> Result<FullHamiltonian> {
    if cutoff < 1 {
        return Err(Error::InvalidArgument(format!("cutoff must be >= 1, got {cutoff}")));
    }
    let dim = FullBasisIndex::dim(cutoff);
    let mut matrix = DMatrix::<Complex64>::zeros(dim, dim);
    let spin = |up: bool| if up { 1.0 } else { -1.0 };

    for idx in 0..dim {
        let b = FullBasisIndex::from_linear(idx, cutoff);
        let sz = spin(b.atom_a_up) + spin(b.atom_b_up);
        let diag = match picture {
            Picture::Lab => {
                0.5 * params.omega_atom() * sz + params.omega_cavity() * (b.n_a + b.n_b) as f64
            }
            Picture::Interaction => 0.5 * params.detuning() * sz,
        };
        matrix[(idx, idx)] += Complex64::new(diag, 0.0);

        // a σ_A⁺ : |↓, n_a⟩ → √n_a |↑, n_a − 1⟩, plus the conjugate entry.
        if !b.atom_a_up && b.n_a >= 1 {
            let to = FullBasisIndex::new(true, b.atom_b_up, b.n_a - 1, b.n_b).linear(cutoff);
            let v = Complex64::new(params.g_a() * (b.n_a as f64).sqrt(), 0.0);
            matrix[(to, idx)] += v;
            matrix[(idx, to)] += v.conj();
        }
        if !b.atom_b_up && b.n_b >= 1 {
            let to = FullBasisIndex::new(b.atom_a_up, true, b.n_a, b.n_b - 1).linear(cutoff);
            let v = Complex64::new(params.g_b() * (b.n_b as f64).sqrt(), 0.0);
            matrix[(to, idx)] += v;
            matrix[(idx, to)] += v.conj();
        }
    }

    let mut nonzeros = Vec::new();
    for r in 0..dim {
        for c in 0..dim {
            let v = matrix[(r, c)];
            if v != Complex64::new(0.0, 0.0) {
                nonzeros.push((r, c, v));
            }
        }
    }
    Ok(FullHamiltonian { matrix, params: *params, picture, cutoff, nonzeros })
}

/// The interaction-picture Hamiltonian restricted to the single-excitation
/// sector, ordered `(x, y, z, k)`.
pub fn subspace_hamiltonian(params: &CouplingParams) -> Matrix4<Complex64> {
    let c = |v: f64| Complex64::new(v, 0.0);
    let d = -params.detuning();
    let (ga, gb) = (params.g_a(), params.g_b());
    Matrix4::new(
        c(0.0), c(0.0), c(ga), c(0.0),
        c(0.0), c(0.0), c(0.0), c(gb),
        c(ga), c(0.0), c(d), c(0.0),
        c(0.0), c(gb), c(0.0), c(d),
    )
}
