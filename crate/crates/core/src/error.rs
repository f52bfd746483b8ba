use std::fmt;

use thiserror::Error;

/// Coarse error classes, stable across releases so that callers (and the
/// CLI's stderr line) can branch on them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorCategory {
    Config,
    Contract,
    Capacity,
    Numerical,
    Io,
}

impl ErrorCategory {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCategory::Config => "config",
            ErrorCategory::Contract => "contract",
            ErrorCategory::Capacity => "capacity",
            ErrorCategory::Numerical => "numerical",
            ErrorCategory::Io => "io",
        }
    }
}

impl fmt::Display for ErrorCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("{what} of size {requested} exceeds the configured cap of {cap}")]
    Capacity {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("matrix is not Hermitian: max |H_rc - conj(H_cr)| = {defect:e}")]
    NotHermitian { defect: f64 },

    #[error("eigensolver failed to converge on {descriptor}")]
    NoConvergence { descriptor: String },

    #[error("need at least {required} levels for spacing statistics, got {found}")]
    TooFewLevels { required: usize, found: usize },

    #[error("vector is not normalized: sum |psi|^2 = {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("degenerate spectrum: {0}")]
    Degenerate(String),

    #[error("at J = {j}, member {member}: {source}")]
    AtPoint {
        j: f64,
        member: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    TomlDe(#[from] toml::de::Error),

    #[error(transparent)]
    TomlSer(#[from] toml::ser::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::Config(_) | Error::TomlDe(_) | Error::TomlSer(_) | Error::Json(_) => ErrorCategory::Config,
            Error::Contract(_)
            | Error::NotHermitian { .. }
            | Error::TooFewLevels { .. }
            | Error::NotNormalized { .. }
            | Error::Empty(_) => ErrorCategory::Contract,
            Error::Capacity { .. } => ErrorCategory::Capacity,
            Error::NoConvergence { .. } | Error::Degenerate(_) => ErrorCategory::Numerical,
            Error::AtPoint { source, .. } => source.category(),
            Error::Io(_) => ErrorCategory::Io,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
