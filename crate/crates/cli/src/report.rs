use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// One line for humans.
    pub summary: String,
    #[serde(skip_serializing_if = "Value::is_null", default)]
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

impl Check {
    pub fn new(name: &str, passed: bool, summary: impl Into<String>) -> Self {
        Check { name: name.to_string(), passed, summary: summary.into(), details: Value::Null, elapsed_ms: None }
    }

    pub fn with_details(mut self, details: impl Serialize) -> Self {
        self.details = serde_json::to_value(details).expect("serializable");
        self
    }

    /// A check that could not run: it fails, carrying the error.
    pub fn error(name: &str, err: impl std::fmt::Display) -> Self {
        Check::new(name, false, format!("error: {err}"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub config: RunConfig,
    /// True iff every check passed.
    pub passed: bool,
    pub checks: Vec<Check>,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(config: &RunConfig, checks: Vec<Check>, results: Value) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: config.command.name().to_string(),
            config: config.clone(),
            passed: !checks.is_empty() && checks.iter().all(|c| c.passed),
            checks,
            results,
            elapsed_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}
