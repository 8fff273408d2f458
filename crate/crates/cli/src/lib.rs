//! Scenario files, figure presets and the subcommands behind the `wqed` binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod presets;

pub use config::ScenarioConfig;
pub use error::{CliError, Result};
pub use output::{Cell, Table};
