//! JSON report envelopes.

use serde::Serialize;

use legtangle::invariants::WritheConvention;

pub const SCHEMA: &str = "legtangle/1";

#[derive(Clone, Debug, Default, Serialize)]
pub struct Input {
    pub q: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
}

/// A command's payload wrapped with the schema tag, tool version, the
/// strand writhe convention in force, and the echoed input.
#[derive(Clone, Debug, Serialize)]
pub struct Report<T: Serialize> {
    pub schema: &'static str,
    pub tool: String,
    pub convention: WritheConvention,
    pub input: Input,
    pub notes: Vec<String>,
    #[serde(flatten)]
    pub body: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(convention: WritheConvention, input: Input, notes: Vec<String>, body: T) -> Self {
        Report {
            schema: SCHEMA,
            tool: format!("legtangle {}", env!("CARGO_PKG_VERSION")),
            convention,
            input,
            notes,
            body,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
