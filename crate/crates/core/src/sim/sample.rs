//! Finite-shot estimation of Pauli-string expectations.
//!
//! The state is rotated into the observable's eigenbasis (H on X-factor
//! qubits, S† then H on Y-factor qubits), bitstrings are drawn from the
//! resulting probabilities, and each shot contributes the signed parity of
//! the bits on the observable's support. The estimator is unbiased with
//! per-shot variance `1 − ⟨Ô⟩²`, so the standard error of the mean follows
//! `ε = sqrt(var(Ô)/N_s)`.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::gate::Gate;
use super::pauli::{Pauli, PauliStringObservable};
use super::state::StateVector;
use crate::error::{Error, Result};

/// Outcome of a finite-shot estimate: the mean of the ±1 shot values and
/// their population variance (`1 − estimate²` for a unit-norm string).
pub fn sample_expectation(
    state: &StateVector,
    obs: &PauliStringObservable,
    n_shots: u64,
    rng_seed: u64,
) -> Result<(f64, f64)> {
    if n_shots == 0 {
        return Err(Error::ZeroShots);
    }
    let n = state.n_qubits();
    if obs.n_qubits() != n {
        return Err(Error::ObservableLength { obs: obs.n_qubits(), n_qubits: n });
    }

    let mut rotated = state.clone();
    for (i, p) in obs.factors().iter().enumerate() {
        let qubit = i + 1;
        match p {
            Pauli::X => rotated.apply(&Gate::H { qubit })?,
            Pauli::Y => {
                apply_s_dagger(&mut rotated, qubit);
                rotated.apply(&Gate::H { qubit })?;
            }
            Pauli::I | Pauli::Z => {}
        }
    }

    // Cumulative distribution over basis indices.
    let mut cdf = rotated.probabilities();
    let mut acc = 0.0;
    for p in cdf.iter_mut() {
        acc += *p;
        *p = acc;
    }
    let total = acc;

    let support_mask = support_mask(obs, n);
    let sign = obs.sign_f64();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..n_shots {
        let u: f64 = rng.random::<f64>() * total;
        let j = cdf.partition_point(|&c| c < u).min(cdf.len() - 1);
        let parity = (j & support_mask).count_ones() & 1;
        let outcome = sign * if parity == 0 { 1.0 } else { -1.0 };
        sum += outcome;
        sum_sq += outcome * outcome;
    }
    let mean = sum / n_shots as f64;
    let variance = (sum_sq / n_shots as f64 - mean * mean).max(0.0);
    Ok((mean, variance))
}

fn support_mask(obs: &PauliStringObservable, n: usize) -> usize {
    let mut mask = 0usize;
    for (i, p) in obs.factors().iter().enumerate() {
        if *p != Pauli::I {
            mask |= 1 << (n - 1 - i);
        }
    }
    mask
}

/// S† = diag(1, −i) on one qubit; only used for the Y-basis rotation.
fn apply_s_dagger(state: &mut StateVector, qubit: usize) {
    let n = state.n_qubits();
    let pos = n - qubit;
    let minus_i = Complex64::new(0.0, -1.0);
    for (j, amp) in state.amplitudes_mut().iter_mut().enumerate() {
        if (j >> pos) & 1 == 1 {
            *amp *= minus_i;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_eigenstate_is_deterministic() {
        let mut s = StateVector::zero_state(1).unwrap();
        s.apply(&Gate::H { qubit: 1 }).unwrap();
        let x = PauliStringObservable::uniform(1, 1, Pauli::X).unwrap();
        for seed in 0..5 {
            let (est, var) = sample_expectation(&s, &x, 50, seed).unwrap();
            assert_eq!(est, 1.0);
            assert_eq!(var, 0.0);
        }
    }

    #[test]
    fn z_on_zero_single_shot() {
        let s = StateVector::zero_state(1).unwrap();
        let z = PauliStringObservable::uniform(1, 1, Pauli::Z).unwrap();
        let (est, _) = sample_expectation(&s, &z, 1, 7).unwrap();
        assert_eq!(est, 1.0);
    }

    #[test]
    fn y_eigenstate_is_deterministic() {
        // RX(−π/2)|0⟩ = (|0⟩ + i|1⟩)/√2, the +1 eigenstate of Y.
        let mut s = StateVector::zero_state(1).unwrap();
        s.apply(&Gate::Rx { qubit: 1, angle: -std::f64::consts::FRAC_PI_2 }).unwrap();
        let y = PauliStringObservable::uniform(1, 1, Pauli::Y).unwrap();
        let (est, var) = sample_expectation(&s, &y, 64, 3).unwrap();
        assert_eq!(est, 1.0);
        assert_eq!(var, 0.0);
    }

    #[test]
    fn zero_shots_rejected() {
        let s = StateVector::zero_state(1).unwrap();
        let z = PauliStringObservable::uniform(1, 1, Pauli::Z).unwrap();
        assert_eq!(sample_expectation(&s, &z, 0, 0), Err(Error::ZeroShots));
    }

    #[test]
    fn same_seed_reproduces_estimate() {
        let mut s = StateVector::zero_state(2).unwrap();
        s.apply(&Gate::Ry { qubit: 1, angle: 0.9 }).unwrap();
        s.apply(&Gate::Ry { qubit: 2, angle: 1.7 }).unwrap();
        let zz = PauliStringObservable::uniform(1, 2, Pauli::Z).unwrap();
        let a = sample_expectation(&s, &zz, 500, 42).unwrap();
        let b = sample_expectation(&s, &zz, 500, 42).unwrap();
        assert_eq!(a, b);
    }
}
