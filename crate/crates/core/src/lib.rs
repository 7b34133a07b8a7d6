//! Exact desk-scale (N ≤ 12) simulation of spin-chain ground-state feature
//! maps and quantum convolutional neural networks.
//!
//! The crate covers the full pipeline:
//!
//! - [`sim`] — dense statevector simulation, Pauli-string observables,
//!   finite-shot sampling, dense Hermitian operators;
//! - [`cluster`] — the reparametrized transverse cluster Hamiltonian with
//!   periodic boundary, its exact ground states, and the string order
//!   parameter;
//! - [`embed`] — feature maps `x ↦ |ψ(x)⟩` (ground-state and rotation-based
//!   Fourier) plus basis-function dumps;
//! - [`circuit`] — gate lists with shared parameter slots and stage markers;
//! - [`qcnn`] — the fixed 9-3-1 network, the guided 28-parameter ansatz and
//!   an SU(4)-based arbitrary ansatz, with pooling via controlled gates;
//! - [`train`] — datasets, MSE loss, finite-difference gradients, Adam, and
//!   shot-noise-aware accuracy sweeps;
//! - [`regress`] — viscous shock and damped-oscillator regression targets
//!   with a scale-and-shift model wrapper.
//!
//! All randomness flows through explicit seeds; identical inputs give
//! identical outputs regardless of thread count.

pub mod circuit;
pub mod cluster;
pub mod embed;
pub mod error;
pub mod qcnn;
pub mod regress;
pub mod seed;
pub mod sim;
pub mod train;

pub use error::{Error, Result};
