//! Command-line front end: file formats, exit codes and command runners.

pub mod commands;
pub mod error;
pub mod files;

pub use commands::{run, Cli};
pub use error::{CliError, Result};
