//! Command-line front end: single coefficients, closed forms, grid
//! verification sweeps with JSON reports, and engine benchmarks.

pub mod bench;
pub mod cli;
pub mod report;
pub mod sweep;

use dyson_core::laurent::DEFAULT_TERM_CAP;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] dyson_core::Error),
    #[error("engine mismatch: {0}")]
    EngineMismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl HarnessError {
    pub fn exit_code(&self) -> u8 {
        match self {
            HarnessError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// Term cap from `DYSON_TERM_CAP`, or the default.
pub fn term_cap() -> Result<usize, HarnessError> {
    match std::env::var("DYSON_TERM_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| HarnessError::Usage(format!("DYSON_TERM_CAP must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_TERM_CAP),
    }
}
