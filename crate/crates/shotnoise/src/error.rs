use shotnoise_core::Error as CoreError;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// IO failure or a failed verification scenario.
    pub const FAILURE: i32 = 1;
    pub const SCHEMA: i32 = 2;
    pub const NUMERIC: i32 = 3;
    pub const DIVERGENT: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid spec: {0}")]
    Schema(String),
    #[error("numeric failure: {0}")]
    Numeric(CoreError),
    #[error("divergent model: {0}")]
    Divergent(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Schema(_) => exit::SCHEMA,
            Self::Numeric(_) => exit::NUMERIC,
            Self::Divergent(_) => exit::DIVERGENT,
            Self::Io(_) => exit::FAILURE,
        }
    }

    /// Machine-readable description written to stderr.
    pub fn payload(&self) -> serde_json::Value {
        let kind = match self {
            Self::Schema(_) => "schema",
            Self::Numeric(_) => "numeric",
            Self::Divergent(_) => "divergent",
            Self::Io(_) => "io",
        };
        let mut value = serde_json::json!({
            "error": kind,
            "exit_code": self.exit_code(),
            "message": self.to_string(),
        });
        if let Self::Numeric(e) = self {
            value["detail"] = serde_json::Value::String(format!("{e:?}"));
        }
        value
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Divergent { .. } | CoreError::NonconvergentMeasure { .. } => Self::Divergent(e.to_string()),
            CoreError::InvalidParameter { .. }
            | CoreError::Domain { .. }
            | CoreError::UnsupportedTransform { .. }
            | CoreError::UnsupportedResponse { .. }
            | CoreError::NoDensity { .. } => Self::Schema(e.to_string()),
            other => Self::Numeric(other),
        }
    }
}
