//! File formats and command-line front end for `principalize-core`.
//!
//! - [`instance`]: TOML instance files.
//! - [`trace_file`]: JSON trace files.
//! - [`dot`]: Graphviz export of a trace.
//! - [`commands`]: the `run`, `verify` and `export-dot` subcommands.

pub mod commands;
pub mod dot;
pub mod error;
pub mod instance;
pub mod trace_file;

pub use error::{CliError, InputError};
pub use instance::{Instance, NerveSpec};
pub use trace_file::TraceFile;
