//! Reparametrized transverse cluster Hamiltonian with periodic boundary,
//! exact ground states, and the string order parameter.
//!
//! The chain interpolates between the pure three-body stabilizer Hamiltonian
//! (`x = 0`, SPT phase) and a trivial transverse-field Hamiltonian (`x = 1`)
//! through the critical point `x = 1/2`:
//!
//! ```text
//! H(x) = −cos(πx/2) Σᵢ ZᵢXᵢ₊₁Zᵢ₊₂ − sin(πx/2) Σᵢ Xᵢ − ε Σᵢ Zᵢ
//! ```
//!
//! with all site indices wrapping around the ring. The small longitudinal
//! field `ε` breaks the residual degeneracy; `ε = 0.01` keeps every scan in
//! this crate gapped.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sim::{accumulate_pauli_product, HermitianOperator, Pauli, PauliStringObservable, StateVector};

pub const DEFAULT_EPSILON: f64 = 0.01;

/// Two lowest levels closer than this raise the degeneracy flag.
pub const DEGENERACY_TOL: f64 = 1e-9;

const MIN_QUBITS: usize = 2;

/// Parameters of `H(x)`: ring size, drive `x ∈ [0, 1]`, and the
/// dimensionless symmetry-breaking field `ε`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ClusterParams {
    pub n_qubits: usize,
    pub x: f64,
    pub epsilon: f64,
}

impl ClusterParams {
    pub fn new(n_qubits: usize, x: f64, epsilon: f64) -> Result<Self> {
        if n_qubits < MIN_QUBITS || n_qubits > crate::sim::MAX_QUBITS {
            return Err(Error::UnsupportedSize {
                n: n_qubits,
                min: MIN_QUBITS,
                max: crate::sim::MAX_QUBITS,
            });
        }
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::FeatureOutOfRange(x));
        }
        if !epsilon.is_finite() || epsilon < 0.0 {
            return Err(Error::InvalidParameter(format!("epsilon must be ≥ 0, got {epsilon}")));
        }
        Ok(Self { n_qubits, x, epsilon })
    }
}

fn wrap(site: usize, n: usize) -> usize {
    (site - 1) % n + 1
}

/// Dense `H(x)`; real symmetric since no term carries a Y factor.
pub fn build_hamiltonian(params: &ClusterParams) -> Result<HermitianOperator> {
    let n = params.n_qubits;
    let dim = 1usize << n;
    let zxz_coeff = Complex64::new(-(std::f64::consts::FRAC_PI_2 * params.x).cos(), 0.0);
    let x_coeff = Complex64::new(-(std::f64::consts::FRAC_PI_2 * params.x).sin(), 0.0);
    let z_coeff = Complex64::new(-params.epsilon, 0.0);

    let mut mat = DMatrix::<Complex64>::zeros(dim, dim);
    for i in 1..=n {
        accumulate_pauli_product(
            &mut mat,
            n,
            zxz_coeff,
            &[(i, Pauli::Z), (wrap(i + 1, n), Pauli::X), (wrap(i + 2, n), Pauli::Z)],
        );
        accumulate_pauli_product(&mut mat, n, x_coeff, &[(i, Pauli::X)]);
        accumulate_pauli_product(&mut mat, n, z_coeff, &[(i, Pauli::Z)]);
    }
    HermitianOperator::new(mat)
}

/// Effective drive from bare couplings: `(2/π)·arcsin(h_x/√(J² + h_x²))`.
/// Scale-invariant in `(J, h_x)`.
pub fn effective_x(j: f64, h_x: f64) -> Result<f64> {
    if j < 0.0 || h_x < 0.0 || !j.is_finite() || !h_x.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "couplings must be finite and non-negative, got J={j}, h_x={h_x}"
        )));
    }
    if j == 0.0 && h_x == 0.0 {
        return Err(Error::DegenerateCouplings);
    }
    Ok(std::f64::consts::FRAC_2_PI * (h_x / j.hypot(h_x)).asin())
}

/// Exact ground state with a fixed global phase.
#[derive(Clone, Debug)]
pub struct GroundStateResult {
    pub energy: f64,
    pub state: StateVector,
    /// `‖Hv − Ev‖₂`, a direct check against the Hamiltonian.
    pub residual: f64,
    /// Distance to the second eigenvalue.
    pub gap: f64,
    /// Set when the two lowest levels are within [`DEGENERACY_TOL`].
    pub degenerate: bool,
}

/// Lowest eigenpair of [`build_hamiltonian`], with the global phase fixed so
/// the largest-magnitude amplitude is real and positive.
pub fn ground_state(params: &ClusterParams) -> Result<GroundStateResult> {
    let hamiltonian = build_hamiltonian(params)?;
    let low = hamiltonian.lowest_eigenpair()?;

    let mut amps: Vec<Complex64> = low.vector.iter().copied().collect();
    let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in amps.iter_mut() {
        *a /= norm;
    }
    // Phase fix: rotate so the largest-|amplitude| entry is real positive.
    let (mut best, mut best_mag) = (0usize, 0.0f64);
    for (i, a) in amps.iter().enumerate() {
        let m = a.norm();
        if m > best_mag {
            best_mag = m;
            best = i;
        }
    }
    let pivot = amps[best];
    let phase = pivot.conj() / pivot.norm();
    for a in amps.iter_mut() {
        *a *= phase;
    }

    let vector = nalgebra::DVector::from_column_slice(&amps);
    let residual = (hamiltonian.matvec(&vector) - vector.scale(low.value)).norm();
    Ok(GroundStateResult {
        energy: low.value,
        state: StateVector::from_amplitudes(amps)?,
        residual,
        gap: low.gap,
        degenerate: low.gap.abs() < DEGENERACY_TOL,
    })
}

/// String order parameter `Ô = (−1)^N · X₁X₂…X_N`, the product of all ring
/// stabilizers.
pub fn string_order(n_qubits: usize) -> Result<PauliStringObservable> {
    if n_qubits < 3 || n_qubits > crate::sim::MAX_QUBITS {
        return Err(Error::UnsupportedSize { n: n_qubits, min: 3, max: crate::sim::MAX_QUBITS });
    }
    let sign = if n_qubits % 2 == 0 { 1 } else { -1 };
    PauliStringObservable::uniform(sign, n_qubits, Pauli::X)
}
