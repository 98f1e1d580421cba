//! Command-line surface of `modsearch`: argument definitions, file formats
//! and the `search`, `verify`, `bench` and `gen` commands.

pub mod args;
pub mod commands;
pub mod formats;

pub use args::Cli;
pub use commands::{run, CliError};
