//! Command-line front end for finite Morita context analysis: the `.mctx`
//! description format, the builtin context registry and the subcommands.

pub mod commands;
pub mod document;
pub mod error;
pub mod registry;

pub use commands::{load, run_command, CommandOutput};
pub use document::{parse_mctx, ContextDocument, ParseError};
pub use error::CliError;
pub use registry::builtin_registry;
