//! File formats, instance generators, solver dispatch and benchmarking for
//! the `fcc` command.

pub mod bench;
mod error;
pub mod format;
pub mod generate;
pub mod report;
pub mod solve;

pub use error::{exit, CliError};
