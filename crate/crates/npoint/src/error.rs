use npoint_core::Error;
use serde_json::{json, Value};

/// Failure of a command, split by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed invocation or configuration (exit 2).
    #[error("usage: {0}")]
    Usage(String),
    /// A numerical contract did not hold (exit 1).
    #[error("{kind}: {message}")]
    Contract { kind: String, message: String, detail: Value },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn contract(kind: &str, message: impl Into<String>, detail: Value) -> Self {
        CliError::Contract { kind: kind.into(), message: message.into(), detail }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Contract { .. } | CliError::Io(_) => 1,
        }
    }

    /// Machine-readable description printed on stderr.
    pub fn diagnostic(&self) -> Value {
        match self {
            CliError::Usage(m) => json!({"status": "usage", "message": m}),
            CliError::Contract { kind, message, detail } => {
                json!({"status": "violation", "kind": kind, "message": message, "detail": detail})
            }
            CliError::Io(e) => json!({"status": "io", "message": e.to_string()}),
        }
    }
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidParameter(_) => "invalid_parameter",
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::OutsideBall(_) => "outside_ball",
        Error::Truncation(_) => "truncation",
        Error::NonPositiveDiagonal => "non_positive_diagonal",
        Error::SingularGram(_) => "singular_gram",
        Error::InconsistentData => "inconsistent_data",
        Error::NoValidRadius(_) => "no_valid_radius",
        Error::Inapplicable(_) => "inapplicable",
        Error::Precondition(_) => "precondition",
        Error::NotMonotone(_) => "not_monotone",
        Error::Domain(_) => "domain",
        Error::Inexact(_) => "inexact",
        Error::Violation(_) => "violation",
        Error::Numerical(_) => "numerical",
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) | Error::DimensionMismatch { .. } | Error::OutsideBall(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::contract(kind(&e), e.to_string(), Value::Null),
        }
    }
}
