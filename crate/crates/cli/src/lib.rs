//! Command-line front end for `fincat`: workspace file formats, DOT output
//! and the `fincat` subcommands.

mod commands;
pub mod dot;
pub mod error;
pub mod io;

pub use commands::{run, Outcome};
pub use error::CliError;
