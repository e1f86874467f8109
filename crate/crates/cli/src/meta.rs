//! Flat `key=value` sidecar files recording everything needed to rerun.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::CliError;

#[derive(Debug, Default)]
pub struct Metadata {
    rows: Vec<(String, String)>,
}

impl Metadata {
    pub fn new(command: &str) -> Self {
        let mut m = Metadata::default();
        m.push("tool", concat!("cirng ", env!("CARGO_PKG_VERSION")));
        m.push("command", command);
        m
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.rows.push((key.into(), value.to_string()));
    }

    pub fn extend(&mut self, rows: impl IntoIterator<Item = (String, String)>) {
        self.rows.extend(rows);
    }

    pub fn render(&self) -> String {
        self.rows
            .iter()
            .map(|(k, v)| format!("{k}={}\n", v.replace('\n', " ")))
            .collect()
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        fs::write(path, self.render()).map_err(|e| CliError::io(path, e))
    }
}

/// Sidecar location: explicit path, else `<output>.meta`, else none.
pub fn sidecar_path(output: Option<&Path>, explicit: Option<&Path>) -> Option<PathBuf> {
    explicit.map(Path::to_path_buf).or_else(|| {
        output.map(|p| {
            let mut s = p.as_os_str().to_owned();
            s.push(".meta");
            PathBuf::from(s)
        })
    })
}
