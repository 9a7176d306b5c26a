//! Atomic CSV/JSON emission of a [`RunRecord`].
//!
//! Files are written to a temporary file in the destination directory and
//! renamed into place, so readers never observe a partial file. CSV doubles
//! use Rust's shortest round-trip formatting (UTF-8, `.` decimal), so a
//! byte-identical run produces byte-identical files.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::config::OutputFormat;
use crate::error::{CliError, Result};
use crate::experiments::RunRecord;

/// Renders the numeric table as CSV: one header row naming the columns,
/// then one row per record entry.
pub fn to_csv(record: &RunRecord) -> String {
    let mut text = record.columns.join(",");
    text.push('\n');
    for row in &record.rows {
        let mut first = true;
        for value in row {
            if !first {
                text.push(',');
            }
            first = false;
            text.push_str(&value.to_string());
        }
        text.push('\n');
    }
    text
}

/// Renders the full record (config echo included) as pretty JSON.
pub fn to_json(record: &RunRecord) -> Result<String> {
    let mut text = serde_json::to_string_pretty(record)
        .map_err(|e| CliError::io(format!("cannot serialize run record: {e}")))?;
    text.push('\n');
    Ok(text)
}

fn write_atomically(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let describe = |e: std::io::Error| CliError::io(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(describe)?;
    tmp.write_all(contents.as_bytes()).map_err(describe)?;
    tmp.flush().map_err(describe)?;
    tmp.persist(path)
        .map_err(|e| CliError::io(format!("cannot write {}: {}", path.display(), e.error)))?;
    Ok(())
}

/// Writes `{out_base}.csv` and/or `{out_base}.json` per the format selector
/// and returns the paths written.
pub fn emit(record: &RunRecord, format: OutputFormat, out_base: &str) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    if format.wants_csv() {
        let path = PathBuf::from(format!("{out_base}.csv"));
        write_atomically(&path, &to_csv(record))?;
        written.push(path);
    }
    if format.wants_json() {
        let path = PathBuf::from(format!("{out_base}.json"));
        write_atomically(&path, &to_json(record)?)?;
        written.push(path);
    }
    Ok(written)
}
