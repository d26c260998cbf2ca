use num_complex::Complex64;

use super::hamiltonian::FullBasisIndex;
use crate::error::{Error, Result};
use crate::model::SingleExcState;

/// Amplitudes over the truncated product basis, indexed by
/// [`FullBasisIndex::linear`].
#[derive(Debug, Clone, PartialEq)]
pub struct FullStateVector {
    amplitudes: Vec<Complex64>,
    cutoff: usize,
}

impl FullStateVector {
    pub fn new(amplitudes: Vec<Complex64>, cutoff: usize) -> Result<Self> {
        if cutoff < 1 {
            return Err(Error::InvalidArgument(format!("cutoff must be >= 1, got {cutoff}")));
        }
        let dim = FullBasisIndex::dim(cutoff);
        if amplitudes.len() != dim {
            return Err(Error::InvalidArgument(format!(
                "expected {dim} amplitudes for cutoff {cutoff}, got {}",
                amplitudes.len()
            )));
        }
        Ok(Self { amplitudes, cutoff })
    }

    /// A single basis state.
    pub fn basis(index: FullBasisIndex, cutoff: usize) -> Result<Self> {
        if index.n_a > cutoff || index.n_b > cutoff {
            return Err(Error::InvalidArgument("photon number above cutoff".into()));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); FullBasisIndex::dim(cutoff.max(1))];
        amps[index.linear(cutoff)] = Complex64::new(1.0, 0.0);
        Self::new(amps, cutoff)
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn amplitude(&self, index: FullBasisIndex) -> Complex64 {
        self.amplitudes[index.linear(self.cutoff)]
    }

    /// `⟨N⟩` for the total excitation number.
    pub fn excitation_expectation(&self) -> f64 {
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(i, a)| {
                a.norm_sqr() * FullBasisIndex::from_linear(i, self.cutoff).excitations() as f64
            })
            .sum()
    }
}

pub(crate) const SECTOR_BASIS: [FullBasisIndex; 4] = [
    FullBasisIndex { atom_a_up: true, atom_b_up: false, n_a: 0, n_b: 0 },
    FullBasisIndex { atom_a_up: false, atom_b_up: true, n_a: 0, n_b: 0 },
    FullBasisIndex { atom_a_up: false, atom_b_up: false, n_a: 1, n_b: 0 },
    FullBasisIndex { atom_a_up: false, atom_b_up: false, n_a: 0, n_b: 1 },
];

/// Places `x, y, z, k` at `|↑↓00⟩, |↓↑00⟩, |↓↓10⟩, |↓↓01⟩`.
pub fn embed(state: &SingleExcState, cutoff: usize) -> Result<FullStateVector> {
    if cutoff < 1 {
        return Err(Error::InvalidArgument(format!("cutoff must be >= 1, got {cutoff}")));
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); FullBasisIndex::dim(cutoff)];
    for (b, a) in SECTOR_BASIS.iter().zip(state.amplitudes()) {
        amps[b.linear(cutoff)] = a;
    }
    FullStateVector::new(amps, cutoff)
}

/// Reads back the single-excitation amplitudes and the probability found in
/// every other excitation sector.
pub fn project(full: &FullStateVector) -> (SingleExcState, f64) {
    let amps = SECTOR_BASIS.map(|b| full.amplitude(b));
    let leakage = full
        .amplitudes
        .iter()
        .enumerate()
        .filter(|(i, _)| FullBasisIndex::from_linear(*i, full.cutoff).excitations() != 1)
        .map(|(_, a)| a.norm_sqr())
        .sum();
    (SingleExcState::from_amplitudes(amps), leakage)
}
