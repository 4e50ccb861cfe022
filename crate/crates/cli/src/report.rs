use serde::{Deserialize, Serialize};
use serde_json::Value;

use perfrank::RankPoly;

/// The result of one command. `passed = false` means a check failed, which is
/// reported with exit code 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub passed: bool,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<RankPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<Value>,
    #[serde(default)]
    pub evidence: Vec<Value>,
    /// Human-readable lines preceding the verdict.
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            passed: true,
            verdict: String::new(),
            rank: None,
            classification: None,
            evidence: Vec::new(),
            lines: Vec::new(),
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn evidence(&mut self, v: impl Serialize) {
        self.evidence
            .push(serde_json::to_value(v).expect("report data serializes"));
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out.push_str(&self.verdict);
        out.push('\n');
        out
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}
