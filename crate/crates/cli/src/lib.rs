//! The `genusgauge` command-line tool as a library: argument definitions,
//! single evaluations, feasibility queries, region tables, parallel scans
//! and fixture replay.

pub mod app;
pub mod context;
pub mod eval;
pub mod fixtures;
pub mod output;
pub mod region;
pub mod scan;

pub use app::{run, Cli};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const INFEASIBLE: i32 = 3;
    pub const RESOURCE: i32 = 4;
    pub const FIXTURE: i32 = 5;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] genusgauge_core::Error),
    #[error("usage: {0}")]
    Usage(String),
    #[error("fixture file: {0}")]
    Fixture(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(_) | CliError::Io(_) => exit::FAILURE,
            CliError::Usage(_) => exit::USAGE,
            CliError::Fixture(_) => exit::FIXTURE,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Largest `k` for roots-of-unity evaluation, from `GENUSGAUGE_MAX_K`.
pub fn roots_cap() -> CliResult<i64> {
    match std::env::var("GENUSGAUGE_MAX_K") {
        Ok(v) => v
            .trim()
            .parse::<i64>()
            .ok()
            .filter(|c| *c >= 1)
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "GENUSGAUGE_MAX_K must be a positive integer, got {v:?}"
                ))
            }),
        Err(_) => Ok(genusgauge_core::dedekind::DEFAULT_ROOTS_CAP),
    }
}
