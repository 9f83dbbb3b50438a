//! Command-line driver: run configuration, JSON reports and the end-to-end
//! verification suite.

pub mod commands;
pub mod config;
pub mod report;
pub mod verify;

pub use commands::run;
pub use config::{Command, Profile, RunConfig};
pub use report::{Check, Report, SCHEMA_VERSION};
