use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] cubic_rings::Error),
    #[error("{0}")]
    Acceptance(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 configuration, 3 numeric or precision, 4 acceptance failure.
    pub fn exit_code(&self) -> u8 {
        use cubic_rings::Error as E;
        match self {
            CliError::Core(E::PrecisionExhausted { .. } | E::CrossValidation(_) | E::IncompleteBox { .. }) => 3,
            CliError::Acceptance(_) => 4,
            _ => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self.exit_code() {
            3 => "numeric",
            4 => "acceptance",
            _ => "config",
        }
    }

    pub fn to_json(&self) -> String {
        json!({ "schema": 1, "error": { "kind": self.kind(), "code": self.exit_code(), "message": self.to_string() } })
            .to_string()
    }
}
