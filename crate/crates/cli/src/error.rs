use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] seshadri_core::Error),
    #[error("{0}")]
    Invalid(String),
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for bad input, 3 for I/O and encoding failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(_) | CliError::Invalid(_) => 2,
            CliError::Write { .. } | CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => 3,
        }
    }
}
