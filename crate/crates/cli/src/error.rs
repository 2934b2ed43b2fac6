use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error at {key}{}: {message}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    Config { key: String, line: Option<usize>, message: String },
    #[error("output directory {path}: {message}")]
    OutputDir { path: String, message: String },
    #[error("task {task} failed: {message}")]
    Task { task: String, message: String },
    #[error("numerical abort in {claim_id}: non-finite value of {quantity}")]
    NonFinite { claim_id: String, quantity: String },
    #[error("report: {0}")]
    Report(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Process exit status: 0 everything passed, 1 a verification or task failed, 2 a
/// configuration error, 3 a numerical abort (a non-finite measured value).
pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } | CliError::OutputDir { .. } => EXIT_CONFIG,
            CliError::NonFinite { .. } => EXIT_NUMERICAL,
            _ => EXIT_FAIL,
        }
    }
}
