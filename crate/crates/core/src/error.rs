use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("subsystem layout {dims:?} does not match matrix dimension {dim}")]
    LayoutMismatch { dims: Vec<usize>, dim: usize },

    #[error("invalid subsystem selection: {0}")]
    InvalidSubsystems(String),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not unitary (max deviation {0:e})")]
    NotUnitary(f64),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("P_t = {p_t} < 0 at t = {t}; fractional powers of P_t are undefined")]
    NegativeDecayFactor { t: f64, p_t: f64 },

    #[error("missing expectation value for observable `{0}`")]
    MissingLabel(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("trace of U cannot be recovered from an unpolarised ancilla (mu = 0)")]
    UnpolarisedAncilla,
}

pub type Result<T> = std::result::Result<T, Error>;
