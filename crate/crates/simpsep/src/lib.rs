//! JSON formats, fixtures and parallel drivers around `simpsep-core`.

pub mod format;
pub mod parallel;

use simpsep_core::FiniteSSet;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] simpsep_core::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("format: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub const FIXTURE_NAMES: [&str; 3] = ["delta1", "delta2", "boundary2"];

/// A built-in simplicial set by name, or a JSON file.
pub fn load_sset(spec: &str) -> Result<FiniteSSet> {
    match spec {
        "delta1" => Ok(FiniteSSet::standard_simplex(1)),
        "delta2" => Ok(FiniteSSet::standard_simplex(2)),
        "boundary2" => Ok(FiniteSSet::boundary(2)?),
        path => {
            let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })?;
            format::sset_from_str(&text)
        }
    }
}
