//! Flock text files.
//!
//! One base per line, written `{ f1 ; f2 ; ... }`, the empty base as `{ }`.
//! `#` starts a comment that runs to the end of the line; blank lines are
//! ignored. Output is canonical: formulas within a base and bases within a
//! flock are ordered by their rendered text.

use std::fs;
use std::path::Path;

use flockrev_core::logic::parse_formula;
use flockrev_core::{Base, Error as CoreError, Flock};

use crate::error::CliError;

fn format_error(line: usize, column: usize, message: impl Into<String>) -> CliError {
    CliError::Format { line, column, message: message.into() }
}

/// Parses one `{ ... }` base, `line` being its 1-based line number.
pub fn parse_base(text: &str, line: usize) -> Result<Base, CliError> {
    let lead = text.len() - text.trim_start().len();
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| format_error(line, lead + 1, "a base must be written `{ f1 ; f2 ; ... }`"))?;
    let mut base = Base::new();
    if inner.trim().is_empty() {
        return Ok(base);
    }
    let mut offset = lead + 1;
    for piece in inner.split(';') {
        if piece.trim().is_empty() {
            return Err(format_error(line, offset + 1, "empty formula between separators"));
        }
        let f = parse_formula(piece).map_err(|e| match e {
            CoreError::Parse { position, message } => format_error(line, offset + 1 + position, message),
            other => CliError::Core(other),
        })?;
        base.insert(f);
        offset += piece.len() + 1;
    }
    Ok(base)
}

pub fn parse_flock(text: &str) -> Result<Flock, CliError> {
    let mut flock = Flock::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        flock.insert(parse_base(content, i + 1)?);
    }
    Ok(flock)
}

/// Canonical text; an empty flock renders as a comment so that the file
/// still reads back as the empty flock.
pub fn render_flock(flock: &Flock) -> String {
    if flock.is_empty() {
        return "# no bases\n".to_string();
    }
    flock.to_string()
}

pub fn load_flock(path: &Path) -> Result<Flock, CliError> {
    let text =
        fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    parse_flock(&text).map_err(|e| e.in_file(path))
}

pub fn save_flock(path: &Path, flock: &Flock) -> Result<(), CliError> {
    fs::write(path, render_flock(flock)).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}
