//! Memo tables kept under `--cache-dir`, one versioned JSON file per table.
//!
//! A file with a different version or that fails to parse is ignored and
//! overwritten on the next store.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

pub const CACHE_VERSION: u32 = 1;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CacheFile {
    pub version: u32,
    pub table: String,
    pub entries: BTreeMap<String, serde_json::Value>,
}

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<&Path>) -> Self {
        Cache { dir: dir.map(Path::to_path_buf) }
    }

    fn path(&self, table: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{table}.v{CACHE_VERSION}.json")))
    }

    fn load(&self, table: &str) -> CacheFile {
        let empty = CacheFile { version: CACHE_VERSION, table: table.into(), entries: BTreeMap::new() };
        let Some(path) = self.path(table) else { return empty };
        std::fs::read_to_string(path)
            .ok()
            .and_then(|s| serde_json::from_str::<CacheFile>(&s).ok())
            .filter(|f| f.version == CACHE_VERSION && f.table == table)
            .unwrap_or(empty)
    }

    pub fn get<T: DeserializeOwned>(&self, table: &str, key: &str) -> Option<T> {
        self.dir.as_ref()?;
        self.load(table).entries.get(key).and_then(|v| serde_json::from_value(v.clone()).ok())
    }

    pub fn put<T: Serialize>(&self, table: &str, key: &str, value: &T) -> std::io::Result<()> {
        let Some(path) = self.path(table) else { return Ok(()) };
        let mut file = self.load(table);
        file.entries.insert(key.into(), serde_json::to_value(value)?);
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(path, serde_json::to_string_pretty(&file)? + "\n")
    }

    /// Returns the cached value or computes and stores it. Store failures
    /// are reported on stderr and otherwise ignored.
    pub fn get_or<T, E>(&self, table: &str, key: &str, compute: impl FnOnce() -> Result<T, E>) -> Result<T, E>
    where
        T: Serialize + DeserializeOwned,
    {
        if let Some(v) = self.get(table, key) {
            return Ok(v);
        }
        let v = compute()?;
        if let Err(e) = self.put(table, key, &v) {
            eprintln!("warning: cannot write cache table {table}: {e}");
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn store_and_reload() {
        let dir = std::env::temp_dir().join(format!("qgroth-cache-test-{}", std::process::id()));
        let cache = Cache::new(Some(&dir));
        assert_eq!(cache.get::<u64>("t", "k"), None);
        let v: Result<u64, ()> = cache.get_or("t", "k", || Ok(7));
        assert_eq!(v, Ok(7));
        let again: Result<u64, ()> = cache.get_or("t", "k", || panic!("recomputed"));
        assert_eq!(again, Ok(7));
        std::fs::write(dir.join(format!("t.v{CACHE_VERSION}.json")), "{\"version\": 0, \"table\": \"t\", \"entries\": {\"k\": 1}}").unwrap();
        assert_eq!(cache.get::<u64>("t", "k"), None);
        std::fs::remove_dir_all(&dir).unwrap();
        assert_eq!(Cache::new(None).get::<u64>("t", "k"), None);
    }
}
