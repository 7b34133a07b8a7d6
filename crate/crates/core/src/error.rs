//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("qubit index {index} out of range for an {n_qubits}-qubit register (indices are 1-based)")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("gate uses qubit {0} more than once")]
    DuplicateQubit(usize),

    #[error("register size {n} outside supported range {min}..={max}")]
    UnsupportedSize { n: usize, min: usize, max: usize },

    #[error("observable acts on {obs} qubits but the register has {n_qubits}")]
    ObservableLength { obs: usize, n_qubits: usize },

    #[error("observable sign must be +1 or -1, got {0}")]
    BadSign(i8),

    #[error("shot count must be at least 1")]
    ZeroShots,

    #[error("operator is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("state vector has {len} amplitudes, expected a power of two between 2 and 4096")]
    BadAmplitudeCount { len: usize },

    #[error("state vector norm {0} too far from 1")]
    NotNormalized(f64),

    #[error("feature value {0} outside [0, 1]")]
    FeatureOutOfRange(f64),

    #[error("effective parameters are undefined for J = h_x = 0")]
    DegenerateCouplings,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("circuit expects {expected} parameters, got {got}")]
    ParamCount { expected: usize, got: usize },

    #[error("circuit acts on {circuit} qubits but the state has {state}")]
    RegisterMismatch { circuit: usize, state: usize },

    #[error("dense operator construction limited to 10 qubits, got {0}")]
    DenseTooLarge(usize),

    #[error("operation requires the ground-state embedding")]
    WrongEmbedding,

    #[error("empty dataset")]
    EmptyDataset,

    #[error("loss became non-finite at epoch {epoch}")]
    NonFiniteLoss { epoch: usize },

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),
}

pub type Result<T> = core::result::Result<T, Error>;
