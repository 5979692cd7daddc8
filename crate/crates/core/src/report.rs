use std::fmt::Display;

use serde::Serialize;

/// One asserted claim: what was expected, what was computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub claim: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Check {
    pub fn eq<T: Display + PartialEq>(claim: impl Into<String>, expected: T, computed: T) -> Check {
        Check {
            claim: claim.into(),
            pass: expected == computed,
            expected: expected.to_string(),
            computed: computed.to_string(),
        }
    }

    pub fn holds(claim: impl Into<String>, expected: impl Into<String>, pass: bool) -> Check {
        let expected = expected.into();
        Check {
            claim: claim.into(),
            computed: if pass { expected.clone() } else { format!("not ({expected})") },
            expected,
            pass,
        }
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

/// Top-level report printed by the CLI.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub command: Vec<String>,
    pub substrate: serde_json::Value,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub version: &'static str,
    pub result: serde_json::Value,
    pub pass: bool,
}

pub const SCHEMA: &str = "ndep-report/1";

impl RunReport {
    pub fn new(command: Vec<String>, substrate: serde_json::Value, checks: Vec<Check>, result: serde_json::Value) -> RunReport {
        RunReport {
            schema: SCHEMA,
            command,
            substrate,
            pass: all_pass(&checks),
            checks,
            seed: None,
            version: env!("CARGO_PKG_VERSION"),
            result,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> RunReport {
        self.seed = Some(seed);
        self
    }
}
