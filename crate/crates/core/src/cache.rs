//! Theta series cache, in memory and optionally on disk.
//!
//! On disk each entry is one UTF-8 file:
//!
//! ```text
//! dim 3; gram 1 0 0 0 1 0 0 0 1; upper 4
//! 0 1
//! 1 6
//! 2 12
//! 3 8
//! 4 6
//! ```
//!
//! The file name is derived from a SHA-256 of the header line, and entries
//! are keyed by the exact Gram matrix and upper bound.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use sha2::{Digest, Sha256};

use crate::enumerate::{theta_series_with, Budget, ThetaSeries};
use crate::error::{Error, Result};
use crate::form::QuadForm;
use crate::matrix::IntMatrix;

pub const CACHE_DIR_ENV: &str = "TQF_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Key {
    gram: IntMatrix,
    upper: u64,
}

impl Key {
    fn header(&self) -> String {
        let entries: Vec<String> = self.gram.row_major().iter().map(i64::to_string).collect();
        format!("dim {}; gram {}; upper {}", self.gram.rows(), entries.join(" "), self.upper)
    }

    fn file_name(&self) -> String {
        let digest = Sha256::digest(self.header().as_bytes());
        let hex: String = digest[..12].iter().map(|b| format!("{b:02x}")).collect();
        format!("theta-{hex}.txt")
    }
}

#[derive(Default)]
pub struct ThetaCache {
    dir: Option<PathBuf>,
    memory: RwLock<HashMap<Key, Arc<ThetaSeries>>>,
}

impl ThetaCache {
    pub fn in_memory() -> Self {
        ThetaCache::default()
    }

    pub fn with_dir(dir: impl Into<PathBuf>) -> Self {
        ThetaCache { dir: Some(dir.into()), memory: RwLock::default() }
    }

    /// Disk-backed if `TQF_CACHE_DIR` is set, memory-only otherwise.
    pub fn from_env() -> Self {
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(d) if !d.is_empty() => Self::with_dir(PathBuf::from(d)),
            _ => Self::in_memory(),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn get_or_compute(&self, f: &QuadForm, upper: u64) -> Result<Arc<ThetaSeries>> {
        self.get_or_compute_with(f, upper, Budget::default())
    }

    pub fn get_or_compute_with(&self, f: &QuadForm, upper: u64, budget: Budget) -> Result<Arc<ThetaSeries>> {
        let key = Key { gram: f.gram().clone(), upper };
        if let Some(hit) = self.memory.read().expect("cache lock poisoned").get(&key) {
            return Ok(hit.clone());
        }
        let series = match self.load(&key, f)? {
            Some(s) => s,
            None => {
                let s = theta_series_with(f, upper, budget)?;
                self.store(&key, &s)?;
                s
            }
        };
        let mut map = self.memory.write().expect("cache lock poisoned");
        // insert-if-absent: a concurrent writer may have won the race
        Ok(map.entry(key).or_insert_with(|| Arc::new(series)).clone())
    }

    fn load(&self, key: &Key, f: &QuadForm) -> Result<Option<ThetaSeries>> {
        let Some(dir) = &self.dir else {
            return Ok(None);
        };
        let path = dir.join(key.file_name());
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        match parse(&text, key) {
            Some(counts) => Ok(Some(ThetaSeries::from_counts(f.clone(), counts)?)),
            // A hash collision or a truncated file; recompute and overwrite.
            None => Ok(None),
        }
    }

    fn store(&self, key: &Key, series: &ThetaSeries) -> Result<()> {
        let Some(dir) = &self.dir else {
            return Ok(());
        };
        fs::create_dir_all(dir)?;
        let path = dir.join(key.file_name());
        let tmp = dir.join(format!(".{}.{}.tmp", key.file_name(), std::process::id()));
        {
            let mut out = std::io::BufWriter::new(fs::File::create(&tmp)?);
            out.write_all(render(key, series).as_bytes())?;
            out.flush()?;
        }
        fs::rename(&tmp, &path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

fn render(key: &Key, series: &ThetaSeries) -> String {
    let mut s = key.header();
    s.push('\n');
    for (k, c) in series.counts().iter().enumerate() {
        s.push_str(&format!("{k} {c}\n"));
    }
    s
}

fn parse(text: &str, key: &Key) -> Option<Vec<u64>> {
    let mut lines = text.lines();
    if lines.next()? != key.header() {
        return None;
    }
    let mut counts = Vec::with_capacity(key.upper as usize + 1);
    for (expected, line) in lines.enumerate() {
        let (k, c) = line.split_once(' ')?;
        if k.parse::<usize>().ok()? != expected {
            return None;
        }
        counts.push(c.parse().ok()?);
    }
    (counts.len() as u64 == key.upper + 1).then_some(counts)
}
