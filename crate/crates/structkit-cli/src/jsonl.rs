//! JSON Lines I/O with file:line error reporting and atomic writes.

use crate::errors::{CliError, ErrorCode};
use anyhow::Result;
use serde::de::DeserializeOwned;
use serde::Serialize;
use std::io::Write;
use std::path::Path;

pub fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::new(ErrorCode::IoError, format!("{}: {e}", path.display()))
    })?;
    let mut items = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let item: T =
            serde_json::from_str(line).map_err(|e| CliError::parse(path, idx + 1, e))?;
        items.push(item);
    }
    Ok(items)
}

/// Raw lines, for byte-preserving pipelines like corpus mixing.
pub fn read_lines(path: &Path) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::new(ErrorCode::IoError, format!("{}: {e}", path.display()))
    })?;
    Ok(text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(str::to_string)
        .collect())
}

/// Writes atomically: temp file in the target directory, then rename.
pub fn write_atomic(path: &Path, content: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut temp = match dir {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| {
                CliError::new(ErrorCode::IoError, format!("{}: {e}", dir.display()))
            })?;
            tempfile::NamedTempFile::new_in(dir)
        }
        None => tempfile::NamedTempFile::new(),
    }
    .map_err(|e| CliError::new(ErrorCode::IoError, format!("{}: {e}", path.display())))?;
    temp.write_all(content)
        .map_err(|e| CliError::new(ErrorCode::IoError, format!("{}: {e}", path.display())))?;
    temp.persist(path)
        .map_err(|e| CliError::new(ErrorCode::IoError, format!("{}: {e}", path.display())))?;
    Ok(())
}

pub fn write_jsonl<T: Serialize>(path: &Path, items: &[T]) -> Result<()> {
    let mut out = String::new();
    for item in items {
        out.push_str(&serde_json::to_string(item)?);
        out.push('\n');
    }
    write_atomic(path, out.as_bytes())
}

pub fn write_json_pretty<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}
