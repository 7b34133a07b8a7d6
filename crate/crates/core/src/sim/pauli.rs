//! Pauli operators and signed Pauli-string observables.
//!
//! A [`PauliStringObservable`] is `sign · P_1 ⊗ P_2 ⊗ … ⊗ P_N` with
//! `P_i ∈ {I, X, Y, Z}` and `sign ∈ {−1, +1}`. Every such operator is a
//! signed permutation in the computational basis: it maps `|j⟩` to a phase
//! times `|j ⊕ f⟩` where `f` flips the X/Y sites. That structure is used
//! for expectation values, sampling and dense matrix assembly.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// Action on a single basis bit: `P|b⟩ = coeff · |b ⊕ flip⟩`.
    pub(crate) fn action(self, bit: u8) -> (Complex64, u8) {
        let sign = if bit == 0 { 1.0 } else { -1.0 };
        match self {
            Pauli::I => (Complex64::new(1.0, 0.0), 0),
            Pauli::X => (Complex64::new(1.0, 0.0), 1),
            // Y|0⟩ = i|1⟩, Y|1⟩ = −i|0⟩
            Pauli::Y => (Complex64::new(0.0, sign), 1),
            Pauli::Z => (Complex64::new(sign, 0.0), 0),
        }
    }

    /// Product `self · other` as `(phase, pauli)`.
    pub(crate) fn mul(self, other: Pauli) -> (Complex64, Pauli) {
        use Pauli::*;
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match (self, other) {
            (I, p) | (p, I) => (one, p),
            (X, X) | (Y, Y) | (Z, Z) => (one, I),
            (X, Y) => (i, Z),
            (Y, X) => (-i, Z),
            (Y, Z) => (i, X),
            (Z, Y) => (-i, X),
            (Z, X) => (i, Y),
            (X, Z) => (-i, Y),
        }
    }
}

/// Signed tensor product of Pauli factors over a fixed-width register.
///
/// Qubit `i` (1-based, qubit 1 most significant) carries `factors[i-1]`.
/// Eigenvalues are `±1`, so expectations lie in `[−1, +1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliStringObservable {
    sign: i8,
    factors: Vec<Pauli>,
}

impl PauliStringObservable {
    pub fn new(sign: i8, factors: Vec<Pauli>) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::BadSign(sign));
        }
        if factors.is_empty() {
            return Err(Error::ObservableLength { obs: 0, n_qubits: 0 });
        }
        Ok(Self { sign, factors })
    }

    /// `sign · P` acting on a single qubit of an `n`-qubit register.
    pub fn single(sign: i8, n_qubits: usize, qubit: usize, pauli: Pauli) -> Result<Self> {
        if qubit == 0 || qubit > n_qubits {
            return Err(Error::QubitOutOfRange { index: qubit, n_qubits });
        }
        let mut factors = vec![Pauli::I; n_qubits];
        factors[qubit - 1] = pauli;
        Self::new(sign, factors)
    }

    /// Same Pauli on every qubit, e.g. `sign · X⊗X⊗…⊗X`.
    pub fn uniform(sign: i8, n_qubits: usize, pauli: Pauli) -> Result<Self> {
        Self::new(sign, vec![pauli; n_qubits])
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn sign_f64(&self) -> f64 {
        f64::from(self.sign)
    }

    pub fn factors(&self) -> &[Pauli] {
        &self.factors
    }

    pub fn n_qubits(&self) -> usize {
        self.factors.len()
    }

    /// Qubits (1-based) carrying a non-identity factor.
    pub fn support(&self) -> Vec<usize> {
        self.factors
            .iter()
            .enumerate()
            .filter(|(_, p)| **p != Pauli::I)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// `Ô|j⟩ = coeff · |j'⟩`, including the sign.
    pub(crate) fn apply_to_basis(&self, j: usize) -> (Complex64, usize) {
        let n = self.n_qubits();
        let mut coeff = Complex64::new(self.sign_f64(), 0.0);
        let mut out = j;
        for (i, p) in self.factors.iter().enumerate() {
            let pos = n - 1 - i;
            let bit = ((j >> pos) & 1) as u8;
            let (c, flip) = p.action(bit);
            coeff *= c;
            if flip == 1 {
                out ^= 1 << pos;
            }
        }
        (coeff, out)
    }
}

impl core::fmt::Display for PauliStringObservable {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", if self.sign > 0 { '+' } else { '-' })?;
        for p in &self.factors {
            write!(f, "{:?}", p)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_products_close() {
        use Pauli::*;
        for a in [I, X, Y, Z] {
            for b in [I, X, Y, Z] {
                let (phase, _) = a.mul(b);
                assert!((phase.norm() - 1.0).abs() < 1e-15);
            }
        }
        // XY = iZ
        let (phase, p) = X.mul(Y);
        assert_eq!(p, Z);
        assert!((phase - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn sign_validation() {
        assert!(PauliStringObservable::new(2, vec![Pauli::X]).is_err());
        assert!(PauliStringObservable::new(-1, vec![Pauli::X]).is_ok());
    }

    #[test]
    fn basis_action_tracks_flips_and_phases() {
        // -X Z on 2 qubits: |10⟩ -> -(Z phase on q2 bit 0)(flip q1) = -|00⟩
        let obs =
            PauliStringObservable::new(-1, vec![Pauli::X, Pauli::Z]).unwrap();
        let (c, j) = obs.apply_to_basis(0b10);
        assert_eq!(j, 0b00);
        assert!((c - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        let (c, j) = obs.apply_to_basis(0b11);
        assert_eq!(j, 0b01);
        assert!((c - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }
}
