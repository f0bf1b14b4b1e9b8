use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("order {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("order {order} exceeds the supported maximum of {max}")]
    OrderTooLarge { order: usize, max: usize },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("qubit index {index} out of range for {num_qubits} qubits")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("invalid topology: {0}")]
    InvalidTopology(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
