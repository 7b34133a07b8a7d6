//! Feature maps `x ↦ |ψ(x)⟩` and basis-function dumps.
//!
//! Two embeddings are provided: the hidden ground-state map (exact
//! diagonalization of the cluster Hamiltonian at drive `x`) and the
//! rotation-based Fourier map `⊗ᵢ R_Y(ηx)|0⟩`. Basis dumps record the
//! squared projections `|φ_j(x)|² = |⟨j|ψ(x)⟩|²` over an `x`-grid; the
//! antidiagonal products `Re[φ_j*(x)·φ_j̄(x)]` are what the X-string order
//! collects, and their signed sum reproduces `⟨Ô⟩(x)` exactly.

use rayon::prelude::*;

use crate::cluster::{ground_state, string_order, ClusterParams};
use crate::error::{Error, Result};
use crate::sim::{Gate, StateVector};

#[derive(Copy, Clone, Debug, PartialEq)]
pub enum EmbeddingSpec {
    /// Ground state of the transverse cluster Hamiltonian at drive `x`.
    GroundState { n_qubits: usize, epsilon: f64 },
    /// Product of single-qubit rotations `R_Y(ηx)` on the zero state.
    Fourier { n_qubits: usize, eta: f64 },
}

impl EmbeddingSpec {
    pub fn ground_state(n_qubits: usize, epsilon: f64) -> Result<Self> {
        // Reuse the parameter validation at a fixed drive.
        ClusterParams::new(n_qubits, 0.0, epsilon)?;
        Ok(EmbeddingSpec::GroundState { n_qubits, epsilon })
    }

    pub fn fourier(n_qubits: usize, eta: f64) -> Result<Self> {
        if n_qubits == 0 || n_qubits > crate::sim::MAX_QUBITS {
            return Err(Error::UnsupportedSize { n: n_qubits, min: 1, max: crate::sim::MAX_QUBITS });
        }
        if !(eta > 0.0) || !eta.is_finite() {
            return Err(Error::InvalidParameter(format!("eta must be > 0, got {eta}")));
        }
        Ok(EmbeddingSpec::Fourier { n_qubits, eta })
    }

    pub fn n_qubits(&self) -> usize {
        match self {
            EmbeddingSpec::GroundState { n_qubits, .. } | EmbeddingSpec::Fourier { n_qubits, .. } => {
                *n_qubits
            }
        }
    }
}

/// Embed a scalar feature. The ground-state map requires `x ∈ [0, 1]`; the
/// Fourier map accepts any real `x`.
pub fn embed(spec: &EmbeddingSpec, x: f64) -> Result<StateVector> {
    match *spec {
        EmbeddingSpec::GroundState { n_qubits, epsilon } => {
            Ok(ground_state(&ClusterParams::new(n_qubits, x, epsilon)?)?.state)
        }
        EmbeddingSpec::Fourier { n_qubits, eta } => {
            if !x.is_finite() {
                return Err(Error::InvalidParameter(format!("feature must be finite, got {x}")));
            }
            let mut state = StateVector::zero_state(n_qubits)?;
            for qubit in 1..=n_qubits {
                state.apply(&Gate::Ry { qubit, angle: eta * x })?;
            }
            Ok(state)
        }
    }
}

/// Squared basis projections over an `x`-grid; rows sum to one.
#[derive(Clone, Debug)]
pub struct BasisDump {
    pub x_grid: Vec<f64>,
    /// `probabilities[r][j] = |⟨j|ψ(x_r)⟩|²`.
    pub probabilities: Vec<Vec<f64>>,
}

pub fn basis_dump(spec: &EmbeddingSpec, x_grid: &[f64]) -> Result<BasisDump> {
    let probabilities = x_grid
        .par_iter()
        .map(|&x| embed(spec, x).map(|s| s.probabilities()))
        .collect::<Result<Vec<_>>>()?;
    Ok(BasisDump { x_grid: x_grid.to_vec(), probabilities })
}

/// Antidiagonal products of ground-state basis functions and their sum.
///
/// `products[r][j] = Re[φ_j*(x_r)·φ_j̄(x_r)]` with `j̄` the bitwise
/// complement of `j`; `string_order[r] = (−1)^N · Σ_j products[r][j]`
/// equals the direct expectation of the string order parameter.
#[derive(Clone, Debug)]
pub struct AntidiagonalDump {
    pub x_grid: Vec<f64>,
    pub products: Vec<Vec<f64>>,
    pub string_order: Vec<f64>,
}

/// Ground-state embedding only; the Fourier map has no antidiagonal story.
pub fn antidiagonal_products(spec: &EmbeddingSpec, x_grid: &[f64]) -> Result<AntidiagonalDump> {
    let n = match spec {
        EmbeddingSpec::GroundState { n_qubits, .. } => *n_qubits,
        EmbeddingSpec::Fourier { .. } => return Err(Error::WrongEmbedding),
    };
    let sign = f64::from(string_order(n)?.sign());
    let rows = x_grid
        .par_iter()
        .map(|&x| -> Result<(Vec<f64>, f64)> {
            let state = embed(spec, x)?;
            let amps = state.amplitudes();
            let dim = amps.len();
            let mask = dim - 1;
            let products: Vec<f64> =
                (0..dim).map(|j| (amps[j].conj() * amps[j ^ mask]).re).collect();
            let sum: f64 = products.iter().sum();
            Ok((products, sign * sum))
        })
        .collect::<Result<Vec<_>>>()?;
    let (products, string_order) = rows.into_iter().unzip();
    Ok(AntidiagonalDump { x_grid: x_grid.to_vec(), products, string_order })
}

/// `count` equally spaced points covering `[lo, hi]` inclusive.
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / (count - 1) as f64;
    (0..count).map(|i| lo + step * i as f64).collect()
}
