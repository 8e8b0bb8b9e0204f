use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
///
/// Variants are grouped so callers (the CLI in particular) can map them onto
/// usage, data and resource failures.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated a precondition (not prime, bad weight, ...).
    #[error("invalid input: {0}")]
    Input(String),

    /// A parameter set is outside the domain of the requested construction.
    #[error("domain error: {0}")]
    Domain(String),

    /// A line of a text file could not be parsed.
    #[error("{path}:{line}: {msg}")]
    Parse { path: PathBuf, line: usize, msg: String },

    /// Parsed data violates a mathematical invariant.
    #[error("data error: {0}")]
    Data(String),

    /// The Deligne bound |a(p)| <= 2 p^((k-1)/2) failed at an unramified prime.
    #[error("Hasse/Deligne bound violated at p = {p}: a(p) = {ap}")]
    HasseViolation { p: u64, ap: i128 },

    /// A query needs primes beyond what a table covers.
    #[error("coverage error: requested x = {requested} but table covers only up to {covered}")]
    Coverage { requested: f64, covered: u64 },

    /// A computation would exceed a configured memory/size budget.
    #[error("resource limit: {0}")]
    Resource(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
