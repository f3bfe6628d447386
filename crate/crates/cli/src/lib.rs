//! Command-line front end: `.ri` problem files, JSON reports and the golden corpus.

pub mod args;
pub mod commands;
pub mod corpus;
pub mod report;
pub mod source;

pub use args::{Cli, Command, CorpusArgs, ProblemArgs};
pub use commands::{run_file, run_text, CliError};
pub use source::{parse_source, ProblemSource, SourceError};

/// Environment variable capping the number of worker threads.
pub const WORKERS_ENV: &str = "RESINT_WORKERS";

/// Sizes the global thread pool from [`WORKERS_ENV`] when it is set.
pub fn configure_workers() -> Result<(), CliError> {
    let Ok(v) = std::env::var(WORKERS_ENV) else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Input(format!("{WORKERS_ENV} must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Input(format!("cannot size the worker pool: {e}")))
}
