//! Exact dense statevector simulation: gates, Pauli-string observables,
//! finite-shot sampling, and dense Hermitian operators.

mod dense;
mod gate;
mod pauli;
mod sample;
mod state;

pub use dense::{HermitianOperator, LowestEigen};
pub use gate::Gate;
pub use pauli::{Pauli, PauliStringObservable};
pub use sample::sample_expectation;
pub use state::{StateVector, MAX_QUBITS};

pub(crate) use dense::accumulate_pauli_product;
