//! Library side of the `lqfa` command-line tool.

pub mod commands;
pub mod csv_io;
pub mod dfa;
mod error;
pub mod manifest;

pub use commands::{dim_cap_from_env, Engine, NChoice};
pub use dfa::DfaDocument;
pub use error::CliError;
pub use manifest::Manifest;
