use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::output::Format;

pub const ZEROS_ENV: &str = "ZETA_ZEROS_PATH";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] zosc_core::Error),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("thread pool: {0}")]
    Threads(#[from] rayon::ThreadPoolBuildError),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub zeros_path: Option<PathBuf>,
    pub n_zeros: usize,
    pub n_max: usize,
    pub output: Option<PathBuf>,
    #[serde(serialize_with = "format_name")]
    pub format: Format,
    pub seed: u64,
    pub threads: Option<usize>,
}

fn format_name<S: serde::Serializer>(f: &Format, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(match f {
        Format::Csv => "csv",
        Format::Json => "json",
    })
}

impl RunConfig {
    /// The zero table path: the flag, then the environment, else an error.
    pub fn resolve_zeros(flag: Option<&Path>) -> CliResult<PathBuf> {
        if let Some(p) = flag {
            return Ok(p.to_path_buf());
        }
        match std::env::var_os(ZEROS_ENV) {
            Some(p) if !p.is_empty() => Ok(PathBuf::from(p)),
            _ => Err(CliError::Usage(format!(
                "no zero table: pass --zeros <path> or set {ZEROS_ENV}"
            ))),
        }
    }

    pub fn zeros_path(&self) -> CliResult<&Path> {
        self.zeros_path
            .as_deref()
            .ok_or_else(|| CliError::Usage(format!("no zero table: pass --zeros <path> or set {ZEROS_ENV}")))
    }

    pub fn load_zeros(&self) -> CliResult<zosc_core::ZeroTable> {
        Ok(zosc_core::ZeroTable::load(self.zeros_path()?, Some(self.n_zeros))?)
    }
}
