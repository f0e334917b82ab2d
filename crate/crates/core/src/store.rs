//! Content-addressed cache of enumerated monoid tables.
//!
//! Entries are JSON files named by the SHA-256 of their key. Each carries
//! the format version and a checksum of its payload; anything that fails to
//! validate is reported with a warning and treated as absent.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::closure::{MonoidElement, MonoidTable};
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;
pub const CACHE_DIR_ENV: &str = "TIEDMON_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub family: String,
    pub n: usize,
    /// Generator labels and images, so redefined families never alias.
    pub generators: Vec<String>,
    pub version: u32,
}

impl CacheKey {
    pub fn new<T: std::fmt::Display>(family: &str, n: usize, gens: &[(String, T)]) -> Self {
        CacheKey {
            family: family.to_string(),
            n,
            generators: gens.iter().map(|(l, g)| format!("{l}={g}")).collect(),
            version: FORMAT_VERSION,
        }
    }

    pub fn fingerprint(&self) -> String {
        let canonical = serde_json::to_vec(self).expect("key serializes");
        hex::encode(Sha256::digest(canonical))
    }
}

#[derive(Serialize, Deserialize)]
struct Entry {
    key: CacheKey,
    checksum: String,
    payload: String,
}

#[derive(Debug, Clone)]
pub struct Store {
    dir: PathBuf,
}

impl Store {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Store { dir: dir.into() }
    }

    /// `$TIEDMON_CACHE_DIR`, else `$XDG_CACHE_HOME/tiedmon`, else
    /// `~/.cache/tiedmon`, else a directory under the system temp dir.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_DIR_ENV)
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("XDG_CACHE_HOME").map(|d| PathBuf::from(d).join("tiedmon")))
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache/tiedmon")))
            .unwrap_or_else(|| std::env::temp_dir().join("tiedmon-cache"));
        Store::new(dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.json", key.fingerprint()))
    }

    pub fn get<T>(&self, key: &CacheKey) -> Option<MonoidTable<T>>
    where
        T: MonoidElement + DeserializeOwned,
    {
        let path = self.path_for(key);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(_) => return None,
        };
        match decode(&bytes, key) {
            Ok(table) => Some(table),
            Err(e) => {
                log::warn!("ignoring cache entry {}: {e}", path.display());
                None
            }
        }
    }

    /// Write atomically: the entry is built in a temporary file in the cache
    /// directory and renamed into place.
    pub fn put<T>(&self, key: &CacheKey, table: &MonoidTable<T>) -> Result<PathBuf>
    where
        T: MonoidElement + Serialize,
    {
        let cache_err = |e: std::io::Error| Error::Cache(e.to_string());
        fs::create_dir_all(&self.dir).map_err(cache_err)?;
        let payload = serde_json::to_string(table).map_err(|e| Error::Cache(e.to_string()))?;
        let entry = Entry {
            key: key.clone(),
            checksum: checksum(&payload),
            payload,
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(cache_err)?;
        serde_json::to_writer(&mut tmp, &entry).map_err(|e| Error::Cache(e.to_string()))?;
        tmp.flush().map_err(cache_err)?;
        let path = self.path_for(key);
        tmp.persist(&path).map_err(|e| cache_err(e.error))?;
        Ok(path)
    }

    pub fn get_or_compute<T, F>(&self, key: &CacheKey, compute: F) -> Result<(MonoidTable<T>, bool)>
    where
        T: MonoidElement + Serialize + DeserializeOwned,
        F: FnOnce() -> Result<MonoidTable<T>>,
    {
        if let Some(t) = self.get(key) {
            return Ok((t, true));
        }
        let table = compute()?;
        if let Err(e) = self.put(key, &table) {
            log::warn!("could not write cache entry: {e}");
        }
        Ok((table, false))
    }
}

fn checksum(payload: &str) -> String {
    hex::encode(Sha256::digest(payload.as_bytes()))
}

fn decode<T>(bytes: &[u8], key: &CacheKey) -> Result<MonoidTable<T>>
where
    T: MonoidElement + DeserializeOwned,
{
    let bad = |m: String| Error::Cache(m);
    let entry: Entry = serde_json::from_slice(bytes).map_err(|e| bad(e.to_string()))?;
    if entry.key.version != FORMAT_VERSION {
        return Err(bad(format!("format version {}", entry.key.version)));
    }
    if &entry.key != key {
        return Err(bad("key mismatch".into()));
    }
    if checksum(&entry.payload) != entry.checksum {
        return Err(bad("checksum mismatch".into()));
    }
    serde_json::from_str(&entry.payload).map_err(|e| bad(e.to_string()))
}
