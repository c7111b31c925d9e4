//! Append-only JSON-lines store of finished enumeration results.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::enumerate::{count_twisted, EnumError, EnumOptions, TwistedCountResult};
use crate::partition::CycleType;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cache {path} line {line}: {source}")]
    Parse { path: PathBuf, line: usize, source: serde_json::Error },
    #[error(transparent)]
    Enum(#[from] EnumError),
}

type Key = (u32, u64, Vec<u32>);

#[derive(Debug)]
pub struct ResultCache {
    path: PathBuf,
    entries: BTreeMap<Key, TwistedCountResult>,
}

fn key(n: u32, q: u64, class: &CycleType) -> Key {
    (n, q, class.parts().to_vec())
}

impl ResultCache {
    /// Loads `path` if it exists; a missing file is an empty cache.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, CacheError> {
        let path = path.as_ref().to_path_buf();
        let mut entries = BTreeMap::new();
        match File::open(&path) {
            Ok(file) => {
                for (i, line) in BufReader::new(file).lines().enumerate() {
                    let line = line.map_err(|source| CacheError::Io { path: path.clone(), source })?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    let r: TwistedCountResult = serde_json::from_str(&line)
                        .map_err(|source| CacheError::Parse { path: path.clone(), line: i + 1, source })?;
                    entries.insert(key(r.n, r.q, &r.cycle_type), r);
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(source) => return Err(CacheError::Io { path, source }),
        }
        Ok(ResultCache { path, entries })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, n: u32, q: u64, class: &CycleType) -> Option<&TwistedCountResult> {
        self.entries.get(&key(n, q, class))
    }

    pub fn append(&mut self, result: &TwistedCountResult) -> Result<(), CacheError> {
        let io = |source| CacheError::Io { path: self.path.clone(), source };
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path).map_err(io)?;
        let line = serde_json::to_string(result).expect("plain data");
        writeln!(file, "{line}").map_err(io)?;
        self.entries.insert(key(result.n, result.q, &result.cycle_type), result.clone());
        Ok(())
    }

    /// Cached result when present, otherwise a fresh enumeration that is then
    /// recorded. The flag reports a hit.
    pub fn count(
        &mut self,
        n: u32,
        class: &CycleType,
        q: u64,
        opts: &EnumOptions,
    ) -> Result<(TwistedCountResult, bool), CacheError> {
        if let Some(hit) = self.get(n, q, class) {
            return Ok((hit.clone(), true));
        }
        let fresh = count_twisted(n, class, q, opts)?;
        self.append(&fresh)?;
        Ok((fresh, false))
    }
}
