use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;

use crate::{CliError, Format};

/// Collects the whole result, then writes it once.
pub struct Output {
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Output {
    pub fn json<T: Serialize>(&self, value: &T) -> Result<(), CliError> {
        let mut buf = serde_json::to_vec_pretty(value)?;
        buf.push(b'\n');
        self.emit(&buf)
    }

    pub fn csv<R: IntoIterator<Item = Vec<String>>>(&self, header: &[&str], rows: R) -> Result<(), CliError> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(header)?;
        for row in rows {
            w.write_record(&row)?;
        }
        let buf = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
        self.emit(&buf)
    }

    pub fn text(&self, text: &str) -> Result<(), CliError> {
        self.emit(text.as_bytes())
    }

    fn emit(&self, bytes: &[u8]) -> Result<(), CliError> {
        match &self.out {
            Some(path) => {
                std::fs::write(path, bytes).map_err(|source| CliError::Io { path: path.display().to_string(), source })
            }
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(bytes)
                    .and_then(|_| stdout.flush())
                    .map_err(|source| CliError::Io { path: "<stdout>".into(), source })
            }
        }
    }
}

pub fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}
