//! Library half of the `accretive` command: argument types, matrix files and
//! the three subcommands. `main.rs` only maps [`Failure`] to exit codes.

pub mod commands;
pub mod matrix_file;

use std::process::ExitCode;

use serde_json::json;

pub use matrix_file::MatrixFile;

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// A campaign finished with violations or trial errors; holds the summary JSON.
    Violation(String),
    /// Unreadable or malformed input, bad flags, missing rows.
    Input(String),
    /// The library rejected mathematically out-of-domain input.
    Domain(accretive::Error),
}

impl Failure {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Failure::Violation(_) => 1,
            Failure::Input(_) => 2,
            Failure::Domain(_) => 3,
        })
    }

    /// Machine-readable error object for stdout.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Failure::Violation(summary) => serde_json::from_str(summary).unwrap_or_else(|_| json!({ "error": summary })),
            Failure::Input(msg) => json!({ "error": msg, "kind": "InvalidInput" }),
            Failure::Domain(e) => json!({ "error": e.to_string(), "kind": e.kind() }),
        }
    }
}

impl From<accretive::Error> for Failure {
    fn from(e: accretive::Error) -> Self {
        match e {
            accretive::Error::InvalidMatrix(msg) => Failure::Input(msg),
            accretive::Error::DimensionMismatch { left, right } => {
                Failure::Input(format!("dimension mismatch: {left} vs {right}"))
            }
            other => Failure::Domain(other),
        }
    }
}
