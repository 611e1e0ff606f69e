//! Report envelope and output-target handling.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use serde::Serialize;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Machine-readable result envelope: command id, echoed inputs, results.
#[derive(Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub inputs: serde_json::Value,
    pub results: serde_json::Value,
}

impl Report {
    pub fn new(command: &str, inputs: serde_json::Value, results: serde_json::Value) -> Self {
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            command: command.into(),
            inputs,
            results,
        }
    }
}

/// Where and how output goes: `json`/`csv` write to stdout; anything else is
/// a file path whose extension picks the format.
pub enum OutputTarget {
    StdoutJson,
    StdoutCsv,
    File { path: PathBuf, csv: bool },
}

impl OutputTarget {
    pub fn parse(spec: &str) -> Result<Self> {
        Ok(match spec {
            "json" => OutputTarget::StdoutJson,
            "csv" => OutputTarget::StdoutCsv,
            path => OutputTarget::File {
                path: PathBuf::from(path),
                csv: path.ends_with(".csv"),
            },
        })
    }

    pub fn wants_csv(&self) -> bool {
        matches!(
            self,
            OutputTarget::StdoutCsv | OutputTarget::File { csv: true, .. }
        )
    }

    pub fn write_json<T: Serialize>(&self, value: &T) -> Result<()> {
        if self.wants_csv() {
            anyhow::bail!("csv output is only supported for the attack sweep");
        }
        let text = serde_json::to_string_pretty(value)?;
        self.write_text(&(text + "\n"))
    }

    pub fn write_text(&self, text: &str) -> Result<()> {
        match self {
            OutputTarget::StdoutJson | OutputTarget::StdoutCsv => {
                std::io::stdout()
                    .write_all(text.as_bytes())
                    .context("writing to stdout")?;
            }
            OutputTarget::File { path, .. } => {
                std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Ok(())
    }
}
