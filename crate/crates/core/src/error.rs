use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("zero table is empty")]
    EmptyTable,
    #[error("invalid zero table: {0}")]
    InvalidTable(String),
    #[error("{what} = {value} is outside {range}")]
    OutOfRange {
        what: &'static str,
        value: f64,
        range: String,
    },
    #[error("{0} is a pole or excluded point")]
    Singular(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("requested {requested} samples, cap is {cap}")]
    ResourceCap { requested: u64, cap: u64 },
    #[error("eigensolver failed: {0}")]
    Eigen(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range(what: &'static str, value: f64, range: impl Into<String>) -> Error {
    Error::OutOfRange {
        what,
        value,
        range: range.into(),
    }
}
