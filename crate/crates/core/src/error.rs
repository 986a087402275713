use thiserror::Error;

use crate::molecule::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} on {requested} qubits exceeds the cap of {cap} qubits")]
    Capacity {
        what: &'static str,
        requested: usize,
        cap: usize,
    },
    #[error("qubit index {index} is out of range 1..={n_qubits}")]
    QubitIndex { index: usize, n_qubits: usize },
    #[error("qubit index {0} listed more than once")]
    DuplicateQubit(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("I/O: {0}")]
    Io(#[from] std::io::Error),
}
