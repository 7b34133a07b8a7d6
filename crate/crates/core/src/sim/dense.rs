//! Dense Hermitian operators and exact eigensolving at desk scale.
//!
//! Everything here is `2^N × 2^N` dense complex linear algebra, good for
//! N ≤ 12 (dimension 4096). Hamiltonians built from Pauli strings are real
//! symmetric and take a faster real decomposition path; generic conjugated
//! operators stay complex.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::pauli::{Pauli, PauliStringObservable};
use crate::error::{Error, Result};

const HERMITICITY_TOL: f64 = 1e-12;

/// Dense Hermitian matrix on an `n`-qubit register.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator {
    n_qubits: usize,
    mat: DMatrix<Complex64>,
}

impl HermitianOperator {
    /// Wrap a matrix, checking shape and Hermiticity (tolerance `1e−12`).
    pub fn new(mat: DMatrix<Complex64>) -> Result<Self> {
        let dim = mat.nrows();
        if mat.ncols() != dim || !dim.is_power_of_two() || dim < 2 {
            return Err(Error::BadAmplitudeCount { len: dim });
        }
        let mut worst: f64 = 0.0;
        for r in 0..dim {
            for c in r..dim {
                worst = worst.max((mat[(r, c)] - mat[(c, r)].conj()).norm());
            }
        }
        if worst > HERMITICITY_TOL {
            return Err(Error::NotHermitian(worst));
        }
        Ok(Self { n_qubits: dim.trailing_zeros() as usize, mat })
    }

    /// Dense matrix of a signed Pauli string.
    pub fn from_pauli_string(obs: &PauliStringObservable) -> Self {
        let n = obs.n_qubits();
        let dim = 1usize << n;
        let mut mat = DMatrix::zeros(dim, dim);
        for j in 0..dim {
            let (coeff, out) = obs.apply_to_basis(j);
            mat[(out, j)] += coeff;
        }
        Self { n_qubits: n, mat }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    pub fn frobenius_distance(&self, other: &DMatrix<Complex64>) -> f64 {
        (&self.mat - other).norm()
    }

    pub fn max_abs_distance(&self, other: &DMatrix<Complex64>) -> f64 {
        (&self.mat - other).iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    pub fn matvec(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        &self.mat * v
    }

    /// True when every entry is real up to roundoff; Pauli strings without
    /// Y factors (all our Hamiltonians) qualify.
    pub fn is_real(&self) -> bool {
        self.mat.iter().all(|e| e.im.abs() <= 1e-13)
    }

    /// All eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut vals: Vec<f64> = if self.is_real() {
            self.mat.map(|e| e.re).symmetric_eigen().eigenvalues.iter().copied().collect()
        } else {
            self.mat.clone().symmetric_eigen().eigenvalues.iter().copied().collect()
        };
        vals.sort_by(|a, b| a.total_cmp(b));
        vals
    }

    /// Lowest eigenpair plus the gap to the second eigenvalue.
    pub fn lowest_eigenpair(&self) -> Result<LowestEigen> {
        if self.is_real() {
            let eig = self.mat.map(|e| e.re).symmetric_eigen();
            let (i0, i1) = two_lowest(eig.eigenvalues.as_slice())?;
            let vector = eig.eigenvectors.column(i0).map(|x| Complex64::new(x, 0.0));
            Ok(LowestEigen {
                value: eig.eigenvalues[i0],
                gap: eig.eigenvalues[i1] - eig.eigenvalues[i0],
                vector: DVector::from_column_slice(vector.as_slice()),
            })
        } else {
            let eig = self.mat.clone().symmetric_eigen();
            let (i0, i1) = two_lowest(eig.eigenvalues.as_slice())?;
            Ok(LowestEigen {
                value: eig.eigenvalues[i0],
                gap: eig.eigenvalues[i1] - eig.eigenvalues[i0],
                vector: DVector::from_column_slice(eig.eigenvectors.column(i0).as_slice()),
            })
        }
    }
}

/// Result of [`HermitianOperator::lowest_eigenpair`].
#[derive(Clone, Debug)]
pub struct LowestEigen {
    pub value: f64,
    pub vector: DVector<Complex64>,
    pub gap: f64,
}

fn two_lowest(vals: &[f64]) -> Result<(usize, usize)> {
    if vals.len() < 2 {
        return Err(Error::Eigensolver("need at least two eigenvalues".into()));
    }
    if vals.iter().any(|v| !v.is_finite()) {
        return Err(Error::Eigensolver("non-finite eigenvalue".into()));
    }
    let mut idx: Vec<usize> = (0..vals.len()).collect();
    idx.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
    Ok((idx[0], idx[1]))
}

/// Accumulate `coeff · Π_s P_s` into `mat`, multiplying factors symbolically
/// when several land on the same site (periodic wrap-around on tiny rings).
pub(crate) fn accumulate_pauli_product(
    mat: &mut DMatrix<Complex64>,
    n_qubits: usize,
    coeff: Complex64,
    sites: &[(usize, Pauli)],
) {
    let mut phase = Complex64::new(1.0, 0.0);
    let mut factors = vec![Pauli::I; n_qubits];
    for &(site, p) in sites {
        debug_assert!(site >= 1 && site <= n_qubits);
        let (extra, combined) = factors[site - 1].mul(p);
        phase *= extra;
        factors[site - 1] = combined;
    }
    let dim = 1usize << n_qubits;
    for j in 0..dim {
        let mut c = phase;
        let mut out = j;
        for (i, p) in factors.iter().enumerate() {
            let pos = n_qubits - 1 - i;
            let bit = ((j >> pos) & 1) as u8;
            let (pc, flip) = p.action(bit);
            c *= pc;
            if flip == 1 {
                out ^= 1 << pos;
            }
        }
        mat[(out, j)] += coeff * c;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_string_dense_matches_expectation_route() {
        let obs = PauliStringObservable::new(-1, vec![Pauli::X, Pauli::Z, Pauli::Y]).unwrap();
        let dense = HermitianOperator::from_pauli_string(&obs);
        let op = HermitianOperator::new(dense.matrix().clone()).unwrap();
        // Eigenvalues of a non-identity signed Pauli string: ±1 evenly split.
        let vals = op.eigenvalues();
        assert_eq!(vals.len(), 8);
        assert!(vals[..4].iter().all(|v| (v + 1.0).abs() < 1e-12));
        assert!(vals[4..].iter().all(|v| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn hermiticity_enforced() {
        let mut m = DMatrix::<Complex64>::zeros(2, 2);
        m[(0, 1)] = Complex64::new(1.0, 0.5);
        m[(1, 0)] = Complex64::new(1.0, 0.5); // not the conjugate
        assert!(matches!(HermitianOperator::new(m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn lowest_eigenpair_of_pauli_z() {
        let z = PauliStringObservable::uniform(1, 1, Pauli::Z).unwrap();
        let op = HermitianOperator::from_pauli_string(&z);
        let low = op.lowest_eigenpair().unwrap();
        assert!((low.value + 1.0).abs() < 1e-12);
        assert!((low.gap - 2.0).abs() < 1e-12);
        // Eigenvector is |1⟩ up to phase.
        assert!(low.vector[1].norm() > 0.999);
    }

    #[test]
    fn overlapping_factors_reduce_symbolically() {
        // Z·Z on the same site is the identity.
        let mut m = DMatrix::<Complex64>::zeros(2, 2);
        accumulate_pauli_product(&mut m, 1, Complex64::new(1.0, 0.0), &[(1, Pauli::Z), (1, Pauli::Z)]);
        assert!((m[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((m[(1, 1)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(m[(0, 1)].norm() < 1e-15);
    }
}
