use serde::Serialize;
use serde_json::Value;

use crate::util::Assertion;

/// What went wrong, when something did.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorEntry {
    /// `input` (exit 2) or `module` (exit 1).
    pub kind: String,
    pub message: String,
}

/// Machine-readable outcome of one subcommand. Object keys serialize in
/// sorted order, so equal runs give byte-identical output.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub subcommand: String,
    pub config: Value,
    pub results: Value,
    pub assertions: Vec<Assertion>,
    pub warnings: Vec<String>,
    pub error: Option<ErrorEntry>,
    pub timing_ms: f64,
    pub status: String,
}

impl Report {
    pub fn new(subcommand: &str, config: Value) -> Report {
        Report {
            subcommand: subcommand.to_string(),
            config,
            results: Value::Object(Default::default()),
            assertions: Vec::new(),
            warnings: Vec::new(),
            error: None,
            timing_ms: 0.0,
            status: String::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && self.assertions.iter().all(|a| a.pass)
    }

    pub fn exit_code(&self) -> i32 {
        match &self.error {
            Some(e) if e.kind == "input" => 2,
            Some(_) => 1,
            None if self.passed() => 0,
            None => 1,
        }
    }

    pub(crate) fn finish(&mut self) {
        self.status = match (&self.error, self.passed()) {
            (Some(e), _) => format!("{}-error", e.kind),
            (None, true) => "ok".into(),
            (None, false) => "assertion-failed".into(),
        };
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report is serializable")
    }

    pub fn to_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report is serializable");
        s.push('\n');
        s
    }
}
