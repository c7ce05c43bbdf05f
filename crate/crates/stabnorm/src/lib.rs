//! Command-line driver for `stabnorm-core`: argument and config parsing,
//! CSV/JSON output, and thread-pool evaluation with ordered reduction.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod parallel;

pub use commands::{dispatch, Report};
pub use config::{parse_config, Parsed, RunConfig};
pub use error::{CliError, CliResult};
