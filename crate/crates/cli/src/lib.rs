//! Command-line front end for the `zz_lattice` library.
//!
//! Every command writes `<prefix>.csv` and `<prefix>.json`; both embed the
//! effective configuration so a run can be reproduced from its own output.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use args::{Cli, Command};
pub use commands::{build, run, RunOutput};
pub use config::{parse_cluster_config, parse_cluster_str, serialize_cluster, ClusterFile, ParsedCluster};
pub use error::CliError;
pub use output::{format_float, Artifact};

/// Environment variable capping worker threads.
pub const THREADS_ENV: &str = "ZZ_LATTICE_THREADS";

/// Sizes the global thread pool from [`THREADS_ENV`] when it is set.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::validation(format!("{THREADS_ENV} must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::validation(format!("thread pool: {e}")))
}
