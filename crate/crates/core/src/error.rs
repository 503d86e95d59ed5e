use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("expected {expected} entries for a square matrix, got {got}")]
    BadShape { expected: usize, got: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not Hermitian (relative asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },
    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("negative power of a singular matrix (min eigenvalue {min_eigenvalue:.3e})")]
    SingularForNegativePower { min_eigenvalue: f64 },
    #[error("{function} is not defined at {value}")]
    DomainViolation { function: String, value: f64 },
    #[error("invalid norm spec: {0}")]
    InvalidSpec(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("quadrature budget of {budget} evaluations exceeded (error estimate {error_estimate:.3e})")]
    BudgetExceeded { budget: usize, error_estimate: f64 },
    #[error("Kwong precondition failed: {0}")]
    KwongPreconditionFailed(String),
    #[error("config error: {0}")]
    Config(String),
}
