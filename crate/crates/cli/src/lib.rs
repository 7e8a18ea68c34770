//! Command-line front end: portfolio CSV parsing, plan reports and the `nosell` subcommands.

pub mod commands;
pub mod error;
pub mod format;
pub mod report;

pub use commands::{run, run_project_simplex_command, run_rebalance_command, EXIT_INPUT, EXIT_OK};
pub use error::CliError;
pub use format::{parse_portfolio, serialize_portfolio};
