use std::path::PathBuf;

use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot parse {field}: {message}")]
    Parse { field: String, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] bjorling_core::Error),
}

impl CliError {
    pub fn parse(field: impl Into<String>, message: impl ToString) -> Self {
        CliError::Parse {
            field: field.into(),
            message: message.to_string(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } => EXIT_VALIDATION,
            CliError::Io { .. } => EXIT_IO,
            CliError::Core(e) if e.is_validation() => EXIT_VALIDATION,
            CliError::Core(_) => EXIT_NUMERIC,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "ParseError",
            CliError::Io { .. } => "IoError",
            CliError::Core(e) => e.kind(),
        }
    }

    /// Machine-readable detail printed on standard error.
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "error": self.kind(),
            "message": self.to_string(),
            "exit_code": self.exit_code(),
        });
        match self {
            CliError::Parse { field, .. } => v["field"] = json!(field),
            CliError::Io { path, .. } => v["path"] = json!(path.display().to_string()),
            CliError::Core(bjorling_core::Error::ValidationFailed(violations)) => {
                v["violations"] = serde_json::to_value(violations).unwrap_or(Value::Null);
            }
            CliError::Core(_) => {}
        }
        v
    }
}

pub type CliResult<T> = Result<T, CliError>;
