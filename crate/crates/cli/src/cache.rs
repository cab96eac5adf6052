//! Persistent cache of computed μ values: one JSON array of entries,
//! rewritten atomically. Writers take a lock file and fail fast if another
//! writer holds it.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use johnson_iso::{MuResult, Subset};
use serde::{Deserialize, Serialize};

pub const ENV_VAR: &str = "JOHNSON_ISO_CACHE";
pub const DEFAULT_PATH: &str = "mu_cache.json";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub n: u32,
    pub m: u32,
    pub k: u64,
    pub mu: u64,
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Subset>>,
    pub certified: bool,
    pub timestamp: String,
}

impl CacheEntry {
    pub fn from_result(r: &MuResult, timestamp: String) -> Self {
        CacheEntry {
            n: r.n,
            m: r.m,
            k: r.k,
            mu: r.mu,
            method: r.method.to_string(),
            witness: Some(r.witness.members().to_vec()),
            certified: r.certified,
            timestamp,
        }
    }

    fn key(&self) -> (u32, u32, u64) {
        (self.n, self.m, self.k)
    }
}

#[derive(Debug, Default)]
pub struct Cache {
    entries: Vec<CacheEntry>,
}

impl Cache {
    /// A missing file is an empty cache.
    pub fn load(path: &Path) -> Result<Self> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Cache::default()),
            Err(e) => return Err(e).with_context(|| format!("reading cache {}", path.display())),
        };
        let mut entries: Vec<CacheEntry> = serde_json::from_str(&text)
            .with_context(|| format!("parsing cache {}", path.display()))?;
        entries.sort_by_key(CacheEntry::key);
        entries.dedup_by_key(|e| e.key());
        Ok(Cache { entries })
    }

    pub fn entries(&self) -> &[CacheEntry] {
        &self.entries
    }

    pub fn get(&self, n: u32, m: u32, k: u64) -> Option<&CacheEntry> {
        self.entries
            .binary_search_by_key(&(n, m, k), CacheEntry::key)
            .ok()
            .map(|i| &self.entries[i])
    }

    /// Inserts or replaces; returns false (and keeps the old entry) when that
    /// would replace a certified value with an uncertified one.
    pub fn insert(&mut self, entry: CacheEntry) -> bool {
        match self
            .entries
            .binary_search_by_key(&entry.key(), CacheEntry::key)
        {
            Ok(i) => {
                if self.entries[i].certified && !entry.certified {
                    return false;
                }
                self.entries[i] = entry;
            }
            Err(i) => self.entries.insert(i, entry),
        }
        true
    }

    fn write(&self, path: &Path) -> Result<()> {
        let tmp = sibling(path, ".tmp");
        let mut json = serde_json::to_string_pretty(&self.entries)?;
        json.push('\n');
        fs::write(&tmp, json).with_context(|| format!("writing {}", tmp.display()))?;
        fs::rename(&tmp, path).with_context(|| format!("replacing {}", path.display()))?;
        Ok(())
    }
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

struct Lock(PathBuf);

impl Lock {
    fn acquire(cache: &Path) -> Result<Self> {
        let path = sibling(cache, ".lock");
        match OpenOptions::new().write(true).create_new(true).open(&path) {
            Ok(mut f) => {
                let _ = writeln!(f, "{}", std::process::id());
                Ok(Lock(path))
            }
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                bail!(
                    "cache {} is locked by another writer ({} exists)",
                    cache.display(),
                    path.display()
                )
            }
            Err(e) => Err(e).with_context(|| format!("creating {}", path.display())),
        }
    }
}

impl Drop for Lock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

/// Reloads the cache under the lock, inserts `entry` and rewrites the file.
/// Returns whether the entry was stored.
pub fn store(path: &Path, entry: CacheEntry) -> Result<bool> {
    let _lock = Lock::acquire(path)?;
    let mut cache = Cache::load(path)?;
    if !cache.insert(entry) {
        return Ok(false);
    }
    cache.write(path)?;
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(mu: u64, certified: bool) -> CacheEntry {
        CacheEntry {
            n: 6,
            m: 3,
            k: 10,
            mu,
            method: "exhaustive".into(),
            witness: None,
            certified,
            timestamp: "2026-01-01T00:00:00Z".into(),
        }
    }

    #[test]
    fn certified_entries_stick() {
        let mut c = Cache::default();
        assert!(c.insert(entry(9, true)));
        assert!(!c.insert(entry(8, false)));
        assert_eq!(c.get(6, 3, 10).unwrap().mu, 9);
        assert!(c.insert(entry(9, true)));
        assert_eq!(c.entries().len(), 1);
    }

    #[test]
    fn round_trip_and_lock() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        assert!(store(&path, entry(9, true)).unwrap());
        let loaded = Cache::load(&path).unwrap();
        assert_eq!(loaded.entries(), &[entry(9, true)]);

        let _held = Lock::acquire(&path).unwrap();
        assert!(store(&path, entry(9, true)).is_err());
    }
}
