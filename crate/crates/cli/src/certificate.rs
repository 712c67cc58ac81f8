use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    /// Recorded for information; does not affect the verdict.
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stage {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<u32>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    pub detail: Value,
}

impl Stage {
    pub fn new(name: &str, prime: Option<u32>, status: Status, detail: Value) -> Self {
        Stage {
            name: name.to_string(),
            prime,
            status,
            message: None,
            detail,
        }
    }

    pub fn failed(name: &str, prime: Option<u32>, message: String) -> Self {
        Stage {
            name: name.to_string(),
            prime,
            status: Status::Fail,
            message: Some(message),
            detail: Value::Null,
        }
    }
}

/// The resolved invocation. `argv` re-runs the command with every default
/// spelled out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandEcho {
    pub name: String,
    pub argv: Vec<String>,
    pub config: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub command: CommandEcho,
    #[serde(skip_serializing_if = "Value::is_null", default)]
    pub results: Value,
    pub stages: Vec<Stage>,
    pub verdict: Status,
}

impl Certificate {
    pub fn new(command: CommandEcho, results: Value, stages: Vec<Stage>) -> Self {
        let verdict = if stages.iter().any(|s| s.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Pass
        };
        Certificate {
            schema_version: SCHEMA_VERSION,
            command,
            results,
            stages,
            verdict,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.command.argv.join(" "));
        let width = self.stages.iter().map(|s| s.name.len()).max().unwrap_or(0);
        for s in &self.stages {
            let prime = s.prime.map(|p| format!("p={p}")).unwrap_or_default();
            out += &format!(
                "  {:<width$}  {:<6} {:<4}  {}\n",
                s.name,
                prime,
                s.status.label(),
                s.message.clone().unwrap_or_else(|| summarize(&s.detail)),
            );
        }
        out + &format!("verdict: {}\n", self.verdict.label())
    }
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        }
    }
}

/// One-line rendering of the scalar fields of a stage detail.
fn summarize(v: &Value) -> String {
    match v {
        Value::Object(map) => map
            .iter()
            .filter(|(_, x)| matches!(x, Value::Number(_) | Value::Bool(_) | Value::String(_)))
            .map(|(k, x)| format!("{k}={}", x.to_string().trim_matches('"')))
            .collect::<Vec<_>>()
            .join(" "),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Writes through a temporary file in the same directory and renames it into
/// place.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => std::path::PathBuf::from("."),
    };
    fs::create_dir_all(&dir)?;
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}
