use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point outside the open unit ball (norm {0})")]
    OutsideBall(f64),
    #[error("series did not reach tolerance within {0} terms")]
    Truncation(usize),
    #[error("kernel diagonal is not positive")]
    NonPositiveDiagonal,
    #[error("gram matrix is singular (smallest eigenvalue {0:e})")]
    SingularGram(f64),
    #[error("different values at coincident points")]
    InconsistentData,
    #[error("no valid radius above {0}")]
    NoValidRadius(f64),
    #[error("characterization inapplicable: {0}")]
    Inapplicable(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("norm ratio sequence decreases at index {0}")]
    NotMonotone(usize),
    #[error("function not analytic on the spectrum: {0}")]
    Domain(String),
    #[error("exact arithmetic unavailable: {0}")]
    Inexact(String),
    #[error("inequality violated: {0}")]
    Violation(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = core::result::Result<T, Error>;
