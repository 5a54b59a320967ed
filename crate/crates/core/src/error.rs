use thiserror::Error;

/// Errors produced by the synthesis, simulation and I/O layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("domain error: |alpha| = {alpha_abs} exceeds beta = {beta}")]
    SplDomain { alpha_abs: f64, beta: f64 },

    #[error("qubit index {index} out of range for width {width}")]
    QubitOutOfRange { index: usize, width: usize },

    #[error("C^{controls}X needs {required} work qubits, {available} given")]
    InsufficientWorkQubits {
        controls: usize,
        required: usize,
        available: usize,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
