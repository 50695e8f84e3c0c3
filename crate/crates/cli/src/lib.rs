//! Parser, printer, and command layer over the operator-algebra crate.
//!
//! The library surface exists so integration tests can drive commands
//! in-process; the `idop` binary is a thin argv wrapper around
//! [`run_command`].

pub mod ast;
pub mod commands;
pub mod parse;
pub mod print;

pub use commands::{run_command, HELP};

/// CLI-level errors, each mapped to a documented exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Malformed input text (exit 1).
    Parse { pos: usize, msg: String },
    /// Malformed invocation (exit 1).
    Usage(String),
    /// Violated precondition: arity or index range, resource guard (exit 2).
    Domain(String),
    /// A mathematical invariant failed to hold (exit 3).
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Usage(_) => 1,
            CliError::Domain(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse { pos, msg } => write!(out, "parse error at position {pos}: {msg}"),
            CliError::Usage(msg) => write!(out, "usage error: {msg}"),
            CliError::Domain(msg) => write!(out, "domain error: {msg}"),
            CliError::Internal(msg) => write!(out, "internal error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<idop::Error> for CliError {
    fn from(e: idop::Error) -> Self {
        match e {
            idop::Error::Internal(msg) => CliError::Internal(msg),
            other => CliError::Domain(other.to_string()),
        }
    }
}
