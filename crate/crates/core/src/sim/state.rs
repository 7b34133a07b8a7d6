//! Dense statevector over 1–12 qubits.
//!
//! Basis convention: the bitstring `b₁b₂…b_N` (qubit 1 first) maps to the
//! index `j = Σ_i b_i · 2^(N−i)`, i.e. qubit 1 is the most significant bit.
//! `|100⟩` on three qubits is index 4.

use num_complex::Complex64;

use super::gate::{apply_dense, Gate};
use super::pauli::PauliStringObservable;
use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩` on `n_qubits`.
    pub fn zero_state(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::UnsupportedSize { n: n_qubits, min: 1, max: MAX_QUBITS });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    /// Wrap an amplitude vector; the length must be `2^n` and the norm 1
    /// within `1e−10`.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if !len.is_power_of_two() || len < 2 || len > (1 << MAX_QUBITS) {
            return Err(Error::BadAmplitudeCount { len });
        }
        let n_qubits = len.trailing_zeros() as usize;
        let state = Self { n_qubits, amps };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized(norm));
        }
        Ok(state)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `|⟨j|ψ⟩|²` for every basis index.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Apply a gate in place. The norm is preserved up to roundoff.
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        let (k, u) = gate.matrix();
        apply_dense(&mut self.amps, self.n_qubits, &gate.qubits(), k, &u);
        debug_assert!((self.norm_sqr() - 1.0).abs() <= 1e-10);
        Ok(())
    }

    /// Consuming variant of [`Self::apply`], handy for chaining in tests.
    pub fn applied(mut self, gate: &Gate) -> Result<Self> {
        self.apply(gate)?;
        Ok(self)
    }

    /// `⟨ψ|Ô|ψ⟩` for a signed Pauli string. Always real; lies in `[−1, 1]`.
    pub fn expectation(&self, obs: &PauliStringObservable) -> Result<f64> {
        if obs.n_qubits() != self.n_qubits {
            return Err(Error::ObservableLength { obs: obs.n_qubits(), n_qubits: self.n_qubits });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..self.amps.len() {
            let (coeff, out) = obs.apply_to_basis(j);
            acc += self.amps[out].conj() * coeff * self.amps[j];
        }
        debug_assert!(acc.im.abs() <= 1e-9, "expectation {acc} not real");
        Ok(acc.re)
    }

    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::RegisterMismatch { circuit: other.n_qubits, state: self.n_qubits });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨ψ|φ⟩|²`.
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Largest deviation between amplitude vectors, ignoring global phase.
    pub fn distance_up_to_phase(&self, other: &Self) -> Result<f64> {
        let ip = self.inner(other)?;
        let phase = if ip.norm() > 1e-12 { ip / ip.norm() } else { Complex64::new(1.0, 0.0) };
        let mut worst: f64 = 0.0;
        for (a, b) in self.amps.iter().zip(&other.amps) {
            worst = worst.max((a * phase - b).norm());
        }
        Ok(worst)
    }
}
