use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid Pauli label: unexpected {found:?} at position {position}")]
    Parse { position: usize, found: char },

    #[error("invalid Pauli label: no qubit letters")]
    EmptyLabel,

    #[error("dimension mismatch: {left} vs {right} qubits")]
    Dimension { left: usize, right: usize },

    #[error("{what} of {requested} exceeds the supported maximum of {max}")]
    Capacity {
        what: &'static str,
        requested: usize,
        max: usize,
    },

    #[error("unknown code {name:?}; valid names are {valid}")]
    UnknownCode { name: String, valid: &'static str },

    #[error("qubit index {index} out of range for {n} qubits")]
    QubitIndex { index: usize, n: usize },

    #[error("structure error: {0}")]
    Structure(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency error: {0}")]
    Consistency(String),
}
