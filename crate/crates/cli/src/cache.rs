//! On-disk cache of computed polynomials, keyed by a content hash of the
//! request. Each entry records the hash of its payload; an entry whose
//! payload no longer matches is treated as missing and rewritten.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Result;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    sha256: String,
    payload: String,
}

pub struct Cache {
    dir: Option<PathBuf>,
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.json", digest(key.as_bytes()))))
    }

    fn load(path: &Path, key: &str) -> Option<Value> {
        let text = fs::read_to_string(path).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        if entry.key != key || entry.sha256 != digest(entry.payload.as_bytes()) {
            return None;
        }
        serde_json::from_str(&entry.payload).ok()
    }

    /// Returns the cached value for `key`, computing and storing it on a miss.
    pub fn get_or_compute(&self, key: &str, compute: impl FnOnce() -> Result<Value>) -> Result<Value> {
        let key = format!("{}|{key}", env!("CARGO_PKG_VERSION"));
        let Some(path) = self.path(&key) else {
            return compute();
        };
        if let Some(v) = Self::load(&path, &key) {
            return Ok(v);
        }
        let value = compute()?;
        let payload = serde_json::to_string(&value)?;
        let entry = Entry { key, sha256: digest(payload.as_bytes()), payload };
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_vec(&entry)?)?;
        fs::rename(tmp, &path)?;
        Ok(value)
    }
}
