use serde::{Deserialize, Serialize};
use serde_json::Value;

/// How a run ended, for the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    /// Nothing failed (or a query answered yes).
    Holds,
    /// At least one verified witness was found.
    Fails,
    /// A conjugacy query answered no.
    QueryFalse,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Holds => 0,
            Outcome::QueryFalse => 1,
            Outcome::Fails => 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub command: String,
    pub config: Value,
    pub outcome: Outcome,
    pub verdicts: Vec<Value>,
    pub bound_disclaimers: Vec<String>,
    pub wall_time_ms: u64,
    #[serde(skip)]
    pub text: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// JSON with the wall time zeroed, for comparing runs.
    pub fn to_json_untimed(&self) -> String {
        Report {
            wall_time_ms: 0,
            ..self.clone()
        }
        .to_json()
    }

    pub fn render_text(&self) -> String {
        let mut out = self.text.join("\n");
        for d in &self.bound_disclaimers {
            out.push_str("\nnote: ");
            out.push_str(d);
        }
        out
    }
}
