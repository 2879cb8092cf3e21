//! Command-line front end for `sgkit`: dataset files, reports and the
//! `check-sg`, `enumerate`, `grid` and `gen` commands.
//!
//! Exit codes: 0 pass, 1 fail, 2 hypothesis violation or invalid
//! parameters, 3 I/O or parse error.

pub mod commands;
pub mod error;
pub mod format;
pub mod report;

pub use commands::{run, Cli, Outcome};
pub use error::CliError;
