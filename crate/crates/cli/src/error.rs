use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    Validation,
    Budget,
    Verification,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Validation => 2,
            ErrorKind::Budget => 3,
            ErrorKind::Verification => 4,
        }
    }
}

/// A failed job. `path` locates the offending job field when known.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("{}{message}", path.as_ref().map(|p| format!("{p}: ")).unwrap_or_default())]
pub struct CliError {
    pub kind: ErrorKind,
    pub path: Option<String>,
    pub message: String,
}

impl CliError {
    pub fn validation(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError {
            kind: ErrorKind::Validation,
            path: Some(path.into()),
            message: message.into(),
        }
    }

    pub fn at(mut self, path: &str) -> Self {
        self.path.get_or_insert_with(|| path.to_string());
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.kind.exit_code()
    }

    /// Body printed in json mode.
    pub fn to_json(&self) -> String {
        let body = serde_json::json!({ "error": self, "exit_code": self.exit_code() });
        serde_json::to_string_pretty(&body).expect("error body serializes")
    }
}

impl From<relhom::Error> for CliError {
    fn from(e: relhom::Error) -> Self {
        use relhom::Error as E;
        let kind = match &e {
            E::Budget { .. } => ErrorKind::Budget,
            E::Verification(_) => ErrorKind::Verification,
            _ => ErrorKind::Validation,
        };
        CliError {
            kind,
            path: None,
            message: e.to_string(),
        }
    }
}
