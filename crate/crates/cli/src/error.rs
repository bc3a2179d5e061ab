use serde_json::json;

/// Failure of a CLI command, mapped to the process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numeric(String),
    #[error("{} expectation(s) not met", .0.len())]
    Mismatch(Vec<Mismatch>),
    #[error("{0}")]
    Io(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub task: String,
    pub output: String,
    pub message: String,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Numeric(_) => 4,
            CliError::Mismatch(_) => 5,
            CliError::Io(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Validation(_) => "validation",
            CliError::Numeric(_) => "numeric",
            CliError::Mismatch(_) => "expectation",
            CliError::Io(_) => "io",
        }
    }

    /// The machine-readable form written to standard error.
    pub fn to_json(&self) -> String {
        let mut body = json!({
            "kind": self.kind(),
            "exit_code": self.exit_code(),
            "message": self.to_string(),
        });
        if let CliError::Mismatch(items) = self {
            body["mismatches"] = items
                .iter()
                .map(|m| json!({"task": m.task, "output": m.output, "message": m.message}))
                .collect();
        }
        json!({ "error": body }).to_string()
    }

    /// Library errors raised while executing a task.
    pub fn from_library(task: &str, e: kinspace::Error) -> Self {
        use kinspace::Error as E;
        let message = format!("task `{task}`: {e}");
        match e {
            E::BlowUp { .. } | E::NonFinite | E::FieldEvaluation { .. } => {
                CliError::Numeric(message)
            }
            _ => CliError::Validation(message),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
