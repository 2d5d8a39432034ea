use thiserror::Error;

use crate::cpc::Violation;

#[derive(Debug, Error)]
pub enum Error {
    /// Shape problems that make a matrix unusable before any cell is inspected.
    #[error("malformed matrix: {0}")]
    Structure(String),

    #[error("pairwise opposite matrix has {} violation(s): {}", .0.len(), join_violations(.0))]
    Invalid(Vec<Violation>),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("criteria mismatch: missing {missing:?}, unexpected {unexpected:?}")]
    CriteriaMismatch {
        missing: Vec<String>,
        unexpected: Vec<String>,
    },

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
