//! Command-line front end: configuration, newform ingestion, the certificate store and the
//! subcommands.

pub mod clock;
pub mod commands;
pub mod config;
pub mod fetch;
pub mod fixtures;
pub mod store;

pub use commands::{run, EXIT_INTERNAL, EXIT_USAGE};
