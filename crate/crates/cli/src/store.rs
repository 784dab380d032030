//! Append-only certificate store: one JSON object per line.

use std::collections::BTreeSet;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};

use bogocert::certifier::{Certificate, Proposition};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("certificate store {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("certificate store {path}, line {line}: {message}")]
    Corrupt { path: PathBuf, line: usize, message: String },
}

type Key = (String, u64, Proposition);

pub struct CertStore {
    path: PathBuf,
    index: BTreeSet<Key>,
}

fn key(c: &Certificate) -> Key {
    (c.label.clone(), c.p, c.proposition)
}

impl CertStore {
    /// Opens (without creating) the store and indexes its entries.
    pub fn open(path: &Path) -> Result<Self, StoreError> {
        let index = Self::read(path)?.iter().map(key).collect();
        Ok(CertStore { path: path.to_path_buf(), index })
    }

    pub fn read(path: &Path) -> Result<Vec<Certificate>, StoreError> {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(StoreError::Io { path: path.to_path_buf(), source: e }),
        };
        text.lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                serde_json::from_str(l).map_err(|e| StoreError::Corrupt {
                    path: path.to_path_buf(),
                    line: i + 1,
                    message: e.to_string(),
                })
            })
            .collect()
    }

    pub fn contains(&self, label: &str, p: u64, prop: Proposition) -> bool {
        self.index.contains(&(label.to_string(), p, prop))
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// Appends unless an entry for (label, p, proposition) exists; returns whether it wrote.
    pub fn append(&mut self, c: &Certificate) -> Result<bool, StoreError> {
        if self.index.contains(&key(c)) {
            return Ok(false);
        }
        let io = |e| StoreError::Io { path: self.path.clone(), source: e };
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(io)?;
        }
        let mut line = serde_json::to_string(c).expect("certificate serializes");
        line.push('\n');
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path).map_err(io)?;
        // one write call per line keeps the file valid line-JSON
        f.write_all(line.as_bytes()).map_err(io)?;
        f.sync_data().map_err(io)?;
        self.index.insert(key(c));
        Ok(true)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }
}
