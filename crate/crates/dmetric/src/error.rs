use thiserror::Error;

use crate::lpsolve::LpStatus;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max asymmetry {max_asymmetry:e})")]
    NotHermitian { max_asymmetry: f64 },

    #[error("eigensolver exceeded its rotation budget ({rotations} rotations)")]
    NoConvergence { rotations: usize },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("operands live over different trace specifications")]
    SpecMismatch,

    #[error("element has trace {trace:e}, too small to normalize")]
    ZeroElement { trace: f64 },

    #[error("value {value} drifted outside its admissible range")]
    NumericalDrift { value: f64 },

    #[error("function integrates to {integral}, not a probability density")]
    NotDensity { integral: f64 },

    #[error("index {index} out of range (max {max})")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("test function is identically zero")]
    ZeroTestFunction,

    #[error("simplex exceeded its pivot budget ({pivots} pivots)")]
    IterationLimit { pivots: usize },

    #[error("linear program ended with status {status:?} where an optimum was required")]
    LpNotOptimal { status: LpStatus },

    #[error("lp value {lp_value} exceeds its certificate {certificate}")]
    CertificateExceeded { lp_value: f64, certificate: f64 },

    #[error("unknown reproduction driver `{0}`")]
    UnknownRepro(String),

    #[error("unknown property check `{0}`")]
    UnknownCheck(String),

    #[error("malformed input: {0}")]
    BadInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
