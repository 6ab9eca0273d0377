//! Library half of the `mdich` command-line tool: argument-independent
//! implementations of the four subcommands plus the experiment suites.
//!
//! Exit-code contract (frozen for scripting):
//! 0 ok, 2 usage / bad parameters, 3 cap exceeded, 4 internal verification
//! failure, 5 domain error.

pub mod commands;
pub mod config;
pub mod error;
pub mod experiment;

pub use error::{CliError, EXIT_CAPS, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION};
