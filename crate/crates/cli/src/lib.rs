//! Suite runner and exporters behind the `mirabolic` binary.

pub mod cli;
pub mod config;
pub mod export;
pub mod report;
pub mod suites;

pub use config::{ConfigError, Params, SuiteConfig};
pub use report::{Case, Report, Verdict};
pub use suites::{run_suite, suite_names};
