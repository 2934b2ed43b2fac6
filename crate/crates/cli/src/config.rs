//! The run configuration: one JSON document with the keys of [`RunConfig`].

use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use tpns_core::{CoreError, Params};
use tpns_solver::{ForcingSpec, SolverError};
use tpns_verify::resolve_claim;

use crate::error::CliError;

/// One workflow step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Task {
    /// Kernel decay scan → `decay_scan.csv`.
    Kernels,
    /// Small-data solve → field dumps and `solve_summary.json`.
    Solve,
    /// Every claim → `verify_<claim_id>.json` and `verify_summary.json`.
    VerifyAll,
    /// One claim (exact id or unique prefix) → `verify_<claim_id>.json`.
    Verify(String),
    /// Far-field expansion → `expansion_report.json` and `remainder_scan.csv`.
    Expand,
    /// `summary.md` from the reports in the output directory.
    Report,
}

impl FromStr for Task {
    type Err = String;

    fn from_str(s: &str) -> Result<Task, String> {
        match s {
            "kernels" => Ok(Task::Kernels),
            "solve" => Ok(Task::Solve),
            "verify_all" => Ok(Task::VerifyAll),
            "expand" => Ok(Task::Expand),
            "report" => Ok(Task::Report),
            _ => match s.strip_prefix("verify:") {
                Some(name) => resolve_claim(name)
                    .map(|c| Task::Verify(c.id.to_string()))
                    .map_err(|e| e.to_string()),
                None => Err(format!(
                    "unknown task '{s}' (expected kernels, solve, verify_all, verify:<claim_id>, expand or report)"
                )),
            },
        }
    }
}

impl TryFrom<String> for Task {
    type Error = String;

    fn try_from(s: String) -> Result<Task, String> {
        s.parse()
    }
}

impl From<Task> for String {
    fn from(t: Task) -> String {
        t.to_string()
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Task::Kernels => f.write_str("kernels"),
            Task::Solve => f.write_str("solve"),
            Task::VerifyAll => f.write_str("verify_all"),
            Task::Verify(id) => write!(f, "verify:{id}"),
            Task::Expand => f.write_str("expand"),
            Task::Report => f.write_str("report"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub forcing: ForcingSpec,
    #[serde(default)]
    pub tasks: Vec<Task>,
    pub output_dir: Option<PathBuf>,
    /// Seed of the randomized checks.
    #[serde(default)]
    pub seed: u64,
}

/// Overrides taken from the command line.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub tasks: Vec<Task>,
    pub output_dir: Option<PathBuf>,
}

/// 1-based line of the first occurrence of `"key"` in the document, if any.
fn key_line(text: &str, key: &str) -> Option<usize> {
    let quoted = format!("\"{key}\"");
    text.lines().position(|l| l.contains(&quoted)).map(|i| i + 1)
}

fn invalid(text: &str, path: &str, key: &str, message: String) -> CliError {
    CliError::Config {
        key: path.to_string(),
        line: key_line(text, key),
        message,
    }
}

fn params_key(e: &CoreError) -> &'static str {
    match e {
        CoreError::DriftRequired => "lambda",
        CoreError::InvalidParam { name, .. } => name,
        _ => "params",
    }
}

fn forcing_key(e: &SolverError) -> &'static str {
    match e {
        SolverError::SupportTooLarge { .. } => "radius",
        _ => "forcing",
    }
}

impl RunConfig {
    /// Parses and validates a configuration document; command-line overrides apply
    /// before validation. Errors name the offending key and, where known, its line.
    pub fn parse(text: &str, overrides: &Overrides) -> Result<RunConfig, CliError> {
        let mut cfg: RunConfig = serde_json::from_str(text).map_err(|e| CliError::Config {
            key: unknown_key(&e.to_string()).unwrap_or_else(|| "document".to_string()),
            line: Some(e.line()),
            message: e.to_string(),
        })?;
        if !overrides.tasks.is_empty() {
            cfg.tasks = overrides.tasks.clone();
        }
        if overrides.output_dir.is_some() {
            cfg.output_dir = overrides.output_dir.clone();
        }
        cfg.params
            .validate()
            .map_err(|e| {
                let key = params_key(&e);
                invalid(text, &format!("params.{key}"), key, e.to_string())
            })?;
        cfg.forcing.validate(&cfg.params).map_err(|e| {
            let key = forcing_key(&e);
            invalid(text, &format!("forcing.{key}"), key, e.to_string())
        })?;
        if cfg.tasks.is_empty() {
            return Err(invalid(text, "tasks", "tasks", "at least one task is required".into()));
        }
        if cfg.output_dir.is_none() {
            return Err(CliError::Config {
                key: "output_dir".into(),
                line: None,
                message: "missing output_dir (set it in the config or pass --out)".into(),
            });
        }
        Ok(cfg)
    }

    pub fn load(path: &Path, overrides: &Overrides) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config {
            key: "document".into(),
            line: None,
            message: format!("{}: {e}", path.display()),
        })?;
        RunConfig::parse(&text, overrides)
    }

    pub fn output_dir(&self) -> &Path {
        self.output_dir.as_deref().expect("validated config has an output directory")
    }
}

/// The field name in serde's "unknown field `x`" / "missing field `x`" messages.
fn unknown_key(message: &str) -> Option<String> {
    ["unknown field `", "missing field `", "duplicate field `"].iter().find_map(|p| {
        let rest = &message[message.find(p)? + p.len()..];
        Some(rest[..rest.find('`')?].to_string())
    })
}
