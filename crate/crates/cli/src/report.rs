//! Versioned JSON reports. Every number is a decimal string.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "princ-lab.report/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RingEcho {
    pub ring: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monoid: Option<String>,
    #[serde(default)]
    pub group: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub version: String,
    /// Subcommand path, e.g. `["comax", "unique"]`.
    pub command: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingEcho>,
    pub verdict: String,
    /// A negative mathematical verdict (exit code 1).
    pub negative: bool,
    pub result: Value,
}

impl Report {
    pub fn new(command: &[&str], ring: Option<RingEcho>, verdict: impl Into<String>, negative: bool, result: Value) -> Self {
        Report {
            schema: SCHEMA.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.iter().map(|s| s.to_string()).collect(),
            ring,
            verdict: verdict.into(),
            negative,
            result,
        }
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self, compact: bool) -> String {
        if compact {
            serde_json::to_string(self).expect("serializable")
        } else {
            serde_json::to_string_pretty(self).expect("serializable")
        }
    }
}

/// A number as a JSON string.
pub fn num(x: impl ToString) -> Value {
    Value::String(x.to_string())
}
