use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A named input is out of its domain. `name` matches the CLI flag spelling.
    #[error("invalid value for `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("invalid X state: {0}")]
    InvalidState(String),

    #[error("invalid density matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid sweep: {0}")]
    InvalidSpec(String),

    #[error(
        "bracket [{lo}, {hi}] does not straddle the zero boundary: f({lo}) = {f_lo:e}, f({hi}) = {f_hi:e}"
    )]
    InvalidBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
