//! CSV emission: fixed 12-significant-digit formatting, stdout or file.

use std::io::Write;
use std::path::PathBuf;

use crate::CliError;

/// Fixed-precision numeric cell (12 significant digits) for diffable output.
pub fn num(x: f64) -> String {
    format!("{x:.11e}")
}

/// Optional numeric cell; empty when undefined.
pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub struct Csv {
    rows: Vec<String>,
}

impl Csv {
    pub fn new(header: &str) -> Self {
        Csv { rows: vec![header.to_string()] }
    }

    pub fn row(&mut self, cells: &[String]) {
        self.rows.push(cells.join(","));
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut text = self.rows.join("\n");
        text.push('\n');
        text.into_bytes()
    }

    pub fn write(&self, out: &Option<PathBuf>) -> Result<(), CliError> {
        let bytes = self.to_bytes();
        match out {
            Some(path) => std::fs::write(path, bytes)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
            None => {
                let stdout = std::io::stdout();
                let mut lock = stdout.lock();
                lock.write_all(&bytes)
                    .and_then(|_| lock.flush())
                    .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))
            }
        }
    }
}
