//! Scenario configuration, suite runner and demo tables behind the `cqmix`
//! command.

pub mod config;
pub mod demos;
pub mod error;
pub mod suites;

pub use config::ScenarioConfig;
pub use demos::demo;
pub use error::{CliError, Result, DEMOS, SUITES};
pub use suites::run_suite;
