//! Command-line front end: configuration, serialization, and the batch
//! runners behind `qgroth verify`.

pub mod acceptance;
pub mod cache;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use commands::{run, Exit};
pub use error::CliError;
