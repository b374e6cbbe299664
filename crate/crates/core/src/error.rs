use thiserror::Error;

/// Crate-wide error type. Exact-arithmetic overflow is always a loud error,
/// never a silent wrap.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("d = {0} is not admissible (must be squarefree and not 0 or 1)")]
    BadFieldParameter(i64),
    #[error("integer overflow in exact 128-bit arithmetic during {0}")]
    Overflow(&'static str),
    #[error("division by zero element")]
    ZeroElement,
    #[error("ideal is not principal")]
    NotPrincipal,
    #[error("{0} is not a positive rational prime")]
    NotPrime(i128),
    #[error("real quadratic field with class number > 1 is unsupported: {0}")]
    UnsupportedClassGroup(String),
    #[error("capacity exceeded: {0}")]
    CapacityExceeded(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("quadrature did not converge: {0}")]
    QuadratureFailure(String),
    #[error("singular input: {0}")]
    Singular(String),
    #[error("sector margin violated: {0}")]
    SectorViolation(String),
    #[error("search retries exhausted: {0}")]
    RetriesExhausted(String),
}

pub type Result<T> = std::result::Result<T, Error>;
