//! Scenario loading and CSV output for the `tether` command-line tool.

pub mod cli;
pub mod commands;
pub mod error;
pub mod format;
pub mod scenario;

pub use cli::{run, Cli};
pub use error::CliError;
pub use scenario::{load_scenario, parse_scenario, Scenario};
