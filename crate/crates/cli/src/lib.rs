//! Command-line front end for regent: query files, scripted examples,
//! certificate replay, sampled law checks and l-group expressions.

pub mod commands;
pub mod error;
pub mod examples;
pub mod instance;
pub mod lgexpr;
pub mod query;

pub use error::{exit, CliError, CliResult};
