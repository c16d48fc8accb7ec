//! Stable error codes for machine-readable stderr output.

use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorCode {
    ParseError,
    IdMismatch,
    UnknownDataset,
    InvalidConfig,
    BackendError,
    IoError,
    Internal,
}

#[derive(Debug)]
pub struct CliError {
    pub code: ErrorCode,
    pub message: String,
}

impl CliError {
    pub fn new(code: ErrorCode, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }

    pub fn parse(path: &std::path::Path, line: usize, detail: impl fmt::Display) -> Self {
        CliError::new(
            ErrorCode::ParseError,
            format!("{}:{line}: {detail}", path.display()),
        )
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for CliError {}

/// Classifies an error chain into a stable code for the stderr JSON.
pub fn classify(err: &anyhow::Error) -> ErrorCode {
    if let Some(cli) = err.downcast_ref::<CliError>() {
        return cli.code;
    }
    if let Some(codec) = err.downcast_ref::<structkit::codec::CodecError>() {
        return match codec {
            structkit::codec::CodecError::UnknownDataset { .. } => ErrorCode::UnknownDataset,
            _ => ErrorCode::ParseError,
        };
    }
    if err.downcast_ref::<structkit::eval::EvalError>().is_some() {
        return ErrorCode::IdMismatch;
    }
    if let Some(corpus) = err.downcast_ref::<structkit::corpus::CorpusError>() {
        return match corpus {
            structkit::corpus::CorpusError::UnknownDataset { .. } => ErrorCode::UnknownDataset,
            _ => ErrorCode::InvalidConfig,
        };
    }
    if err.downcast_ref::<structkit::align::AlignError>().is_some() {
        return ErrorCode::ParseError;
    }
    if let Some(registry) = err.downcast_ref::<structkit::registry::RegistryError>() {
        return match registry {
            structkit::registry::RegistryError::Duplicate { .. } => ErrorCode::InvalidConfig,
            structkit::registry::RegistryError::Io { .. } => ErrorCode::IoError,
            structkit::registry::RegistryError::Parse { .. } => ErrorCode::ParseError,
        };
    }
    if err
        .downcast_ref::<structkit::backend::BackendError>()
        .is_some()
    {
        return ErrorCode::BackendError;
    }
    if err.downcast_ref::<std::io::Error>().is_some() {
        return ErrorCode::IoError;
    }
    ErrorCode::Internal
}

#[derive(Serialize)]
pub struct ErrorReport<'a> {
    pub code: ErrorCode,
    pub message: &'a str,
}
