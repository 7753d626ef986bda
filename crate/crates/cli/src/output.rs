//! Delivering command output to stdout or a file.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use tempfile::NamedTempFile;

use crate::CliError;

/// Rendered output of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub body: String,
    pub path: Option<PathBuf>,
    /// Diagnostics printed to stderr.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(body: String, path: Option<PathBuf>) -> Self {
        Self {
            body,
            path,
            notes: Vec::new(),
        }
    }
}

pub fn emit(report: &Report) -> Result<(), CliError> {
    for note in &report.notes {
        eprintln!("{note}");
    }
    match &report.path {
        Some(path) => write_atomic(path, report.body.as_bytes()),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(report.body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))
        }
    }
}

/// Writes `bytes` to a temporary file next to `path` and renames it into
/// place, so a failed run never leaves a truncated file behind.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io_err = |e: io::Error| CliError::Io(format!("cannot write {}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    if fs::metadata(path).map(|m| m.is_dir()).unwrap_or(false) {
        return Err(CliError::Io(format!("cannot write {}: is a directory", path.display())));
    }
    let mut tmp = NamedTempFile::new_in(&dir).map_err(io_err)?;
    tmp.write_all(bytes).map_err(io_err)?;
    tmp.as_file().sync_all().map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replaces_existing_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        fs::write(&path, "old").unwrap();
        write_atomic(&path, b"new").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "new");
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn missing_directory_is_io_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("nope").join("out.csv");
        assert!(matches!(write_atomic(&path, b"x"), Err(CliError::Io(_))));
        assert!(!path.exists());
    }
}
