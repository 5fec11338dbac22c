//! Command-line companion to `noncompact-core`: run configuration, curve
//! output formats and the `verify` suite.

pub mod config;
pub mod output;
pub mod randsets;
pub mod report;
pub mod verify;

pub use config::{Config, ConfigError, OutputFormat};
pub use report::{CheckResult, VerificationReport};
pub use verify::{run_all, run_suite, VerifyContext};
