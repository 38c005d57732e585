//! Machine-readable run reports.
//!
//! Values carry exact rationals as strings next to decimal renderings so
//! exactness claims survive serialization. Identical configs produce
//! byte-identical reports apart from the `timestamp` field.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

impl Default for ToolInfo {
    fn default() -> Self {
        ToolInfo {
            name: "photonbox",
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

/// One measured value: exact text when available, decimal always.
#[derive(Clone, Debug, Serialize)]
pub struct Measured {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    pub decimal: f64,
}

impl Measured {
    pub fn exact(text: impl Into<String>, decimal: f64) -> Self {
        Measured {
            exact: Some(text.into()),
            decimal,
        }
    }

    pub fn approximate(decimal: f64) -> Self {
        Measured {
            exact: None,
            decimal,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub scheme: String,
    pub inputs: Value,
    pub values: Vec<Measured>,
    /// Zero means the check demands exact equality.
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: ToolInfo,
    pub timestamp: String,
    pub config: Value,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: Value) -> Self {
        Report {
            tool: ToolInfo::default(),
            timestamp: now_rfc3339(),
            config,
            checks: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn push(&mut self, check: CheckRecord) {
        self.summary.total += 1;
        if check.pass {
            self.summary.passed += 1;
        }
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: Vec<CheckRecord>) {
        for c in checks {
            self.push(c);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.passed == self.summary.total
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

fn now_rfc3339() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}
