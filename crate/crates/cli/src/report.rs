//! Report assembly, rendering and error classification.

use std::path::Path;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use strongmorse::io::VertexNames;
use strongmorse::Error;

/// Why a command failed, mapped onto exit codes.
#[derive(Debug)]
pub enum Failure {
    Domain(String),
    Usage(String),
    Budget(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    /// Single line, prefixed by the failure class.
    pub fn diagnostic(&self) -> String {
        let (class, msg) = match self {
            Failure::Domain(m) => ("domain", m),
            Failure::Usage(m) => ("usage", m),
            Failure::Budget(m) => ("budget", m),
        };
        format!("error[{class}]: {}", msg.replace('\n', " "))
    }

    pub fn from_error(err: &Error, names: Option<&VertexNames>) -> Self {
        let msg = match names {
            Some(n) => n.render_error(err),
            None => err.to_string(),
        };
        if err.is_budget() {
            Failure::Budget(msg)
        } else {
            Failure::Domain(msg)
        }
    }
}

pub type CmdResult<T> = Result<T, Failure>;

/// A file the command read, identified by path and content digest.
pub struct Input {
    pub role: &'static str,
    pub path: String,
    pub text: String,
}

impl Input {
    pub fn read(role: &'static str, path: &Path) -> CmdResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Domain(format!("cannot read {}: {e}", path.display())))?;
        Ok(Input {
            role,
            path: path.display().to_string(),
            text,
        })
    }

    fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.text.as_bytes()))
    }
}

pub struct Report {
    pub command: &'static str,
    pub inputs: Vec<Input>,
    pub parameters: Map<String, Value>,
    pub outputs: Value,
    pub summary: String,
    /// Lines printed after the summary in text mode.
    pub details: Vec<String>,
    /// Replaces the text rendering entirely (complex files, Morse files, DOT).
    pub payload: Option<String>,
}

impl Report {
    pub fn new(command: &'static str, inputs: Vec<Input>) -> Self {
        Report {
            command,
            inputs,
            parameters: Map::new(),
            outputs: Value::Null,
            summary: String::new(),
            details: Vec::new(),
            payload: None,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.insert(key.to_string(), value.into());
    }

    pub fn to_json(&self, timing_ms: Option<f64>) -> Value {
        let inputs: Map<String, Value> = self
            .inputs
            .iter()
            .map(|i| {
                (
                    i.role.to_string(),
                    json!({ "path": i.path, "sha256": i.digest() }),
                )
            })
            .collect();
        let mut doc = json!({
            "command": self.command,
            "inputs": inputs,
            "parameters": self.parameters,
            "outputs": self.outputs,
            "summary": self.summary,
        });
        if let Some(ms) = timing_ms {
            doc["timing_ms"] = json!(ms);
        }
        doc
    }

    pub fn to_text(&self) -> String {
        if let Some(p) = &self.payload {
            return p.clone();
        }
        let mut out = self.summary.clone();
        out.push('\n');
        for line in &self.details {
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}
