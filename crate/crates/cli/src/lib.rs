//! File formats and subcommands of the `geam` command-line tool.
//!
//! The binary is a thin wrapper; every subcommand is a function here so
//! tests can drive it without spawning processes.

pub mod analyze;
pub mod catalog_cmd;
pub mod check;
pub mod error;
pub mod files;
pub mod sweep;
pub mod validate;

pub use error::{CliError, CliResult};
