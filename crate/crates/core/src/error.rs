use std::path::PathBuf;

use thiserror::Error;

/// An instance or parameter set that violates a documented invariant.
///
/// `field` names the offending location using the same dotted/indexed paths the
/// JSON schema uses, e.g. `shippers[2].theta` or `weights.carrier`.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{field}: {message}")]
pub struct ValidationError {
    pub field: String,
    pub message: String,
}

impl ValidationError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path} does not match the instance schema: {source}")]
    Schema {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error(transparent)]
    Validation(#[from] ValidationError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SatisfactionError {
    #[error("parameter {name} = {value} must lie in (0, 1]")]
    Parameter { name: &'static str, value: f64 },
    #[error("interval lower bound {lower} exceeds upper bound {upper}")]
    Interval { lower: f64, upper: f64 },
    #[error("degenerate criteria matrix: {0}")]
    DegenerateCriteria(&'static str),
    #[error("{0}")]
    Missing(ValidationError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    /// No assignment satisfies the matching constraints together with the side constraints.
    #[error("no assignment satisfies the constraints")]
    Infeasible,
    /// The UL-bounded region of LP3 is empty; a larger gamma lowers both UL thresholds.
    #[error("no matching reaches f1 >= {f1_ul} and f2 >= {f2_ul}; increase gamma to loosen the thresholds")]
    InfeasibleThresholds { f1_ul: f64, f2_ul: f64 },
    #[error("problem has no feasible matching")]
    EmptyRegion,
    #[error(transparent)]
    Validation(#[from] ValidationError),
}
