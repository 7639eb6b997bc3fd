use thiserror::Error;

/// Errors raised by state construction, entanglement functionals and the oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("matrix is not Hermitian: max |M - M^dagger| = {0:e}")]
    NotHermitian(f64),
    #[error("normalization error: {0}")]
    Normalization(String),
    #[error("matrix is not positive semidefinite: minimum eigenvalue {0:e}")]
    NotPsd(f64),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("state is not maximally correlated: off-pattern entry of modulus {0:e}")]
    NotMaximallyCorrelated(f64),
    #[error("composition hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("scale guard: {0}")]
    Scale(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("construction failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
