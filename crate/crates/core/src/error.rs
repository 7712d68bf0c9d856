use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {dim} exceeds the cap of {cap}")]
    DimensionOverflow { dim: usize, cap: usize },

    #[error("QR iteration did not converge after {iterations} sweeps")]
    NonConvergence { iterations: usize },

    #[error("generator index {index} out of range for a set of {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("empty product word")]
    EmptyWord,

    #[error("matrix set must contain at least one generator")]
    EmptySet,

    #[error("enumeration needs {needed} words but the budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("generated algebra would exceed dimension cap {cap}")]
    DimensionCap { cap: usize },

    #[error("basis elements are linearly dependent (element {index})")]
    LinearlyDependent { index: usize },

    #[error("basis is not closed under multiplication (residual {residual:e})")]
    NotClosed { residual: f64 },

    #[error("matrix is not an element of the algebra (residual {residual:e})")]
    NotInAlgebra { residual: f64 },

    #[error("no spectral gap around the rank threshold (singular value {value:e}, threshold {threshold:e})")]
    IllConditioned { value: f64, threshold: f64 },

    #[error("subspace is not a two-sided ideal (residual {residual:e})")]
    NotAnIdeal { residual: f64 },

    #[error("ideal {index} does not contain its predecessor")]
    NotAChain { index: usize },

    #[error("zero joint spectral radius not certified (upper bound {upper:e})")]
    PreconditionNotCertified { upper: f64 },

    #[error("lifted operator failed its action self-check (residual {residual:e})")]
    LiftSelfCheck { residual: f64 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("matrix {index}: {message}")]
    Shape { index: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
