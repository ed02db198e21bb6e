//! Command-line front end and file formats for `singclass-core`.
//!
//! [`run`] takes an argument vector and returns the exit code together with
//! what would be written to stdout and stderr, so the whole CLI can be
//! driven from tests without spawning processes.

pub mod cli;
pub mod derivfile;
pub mod parse;
pub mod report;
pub mod sweep;

pub use cli::{run, CommandResult};
pub use singclass_core as core;
