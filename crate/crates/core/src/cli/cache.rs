//! On-disk result cache.
//!
//! One JSON file per key under `<dir>/<module>/`, named by the SHA-256 of
//! the key. Each record stores the key, the payload and the SHA-256 of the
//! payload's serialization. Writes go through a temporary file in the same
//! directory followed by a rename.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Bumped whenever an algorithm change could alter a cached payload.
pub const ALGORITHM_VERSION: u32 = 1;

pub fn code_version() -> String {
    format!("{}+{}", env!("CARGO_PKG_VERSION"), ALGORITHM_VERSION)
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn disabled() -> Self {
        Self { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Self { dir: Some(dir.into()) }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn path(&self, module: &str, key: &Value) -> Option<PathBuf> {
        let name = digest(key.to_string().as_bytes());
        self.dir.as_ref().map(|d| d.join(module).join(format!("{name}.json")))
    }

    /// Cached payload for `key`, if present. A record that does not parse,
    /// whose key differs or whose checksum fails is an error.
    pub fn get(&self, module: &str, key: &Value) -> Result<Option<Value>> {
        let Some(path) = self.path(module, key) else { return Ok(None) };
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let (stored_key, payload) = parse_record(&text).map_err(|m| corrupt(&path, &m))?;
        if stored_key != *key {
            return Err(corrupt(&path, "key does not match file name"));
        }
        Ok(Some(payload))
    }

    pub fn put(&self, module: &str, key: &Value, payload: &Value) -> Result<()> {
        let Some(path) = self.path(module, key) else { return Ok(()) };
        let dir = path.parent().expect("module directory");
        fs::create_dir_all(dir)?;
        let record = json!({
            "key": key,
            "checksum": digest(payload.to_string().as_bytes()),
            "payload": payload,
        });
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(serde_json::to_string(&record)?.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(&path).map_err(|e| Error::Io(e.error))?;
        Ok(())
    }

    /// Every record file, sorted by path.
    pub fn records(&self) -> Result<Vec<PathBuf>> {
        let Some(dir) = &self.dir else { return Ok(Vec::new()) };
        let mut out = Vec::new();
        if !dir.exists() {
            return Ok(out);
        }
        for module in fs::read_dir(dir)? {
            let module = module?.path();
            if !module.is_dir() {
                continue;
            }
            for f in fs::read_dir(&module)? {
                let f = f?.path();
                if f.extension().is_some_and(|e| e == "json") {
                    out.push(f);
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Checks every record's checksum; returns the number checked.
    pub fn verify(&self) -> Result<usize> {
        let records = self.records()?;
        for path in &records {
            let text = fs::read_to_string(path)?;
            let (key, _) = parse_record(&text).map_err(|m| corrupt(path, &m))?;
            let module = path.parent().and_then(Path::file_name).and_then(|s| s.to_str()).unwrap_or_default();
            if self.path(module, &key).as_deref() != Some(path.as_path()) {
                return Err(corrupt(path, "key does not match file name"));
            }
        }
        Ok(records.len())
    }

    /// `(module, key)` of every record, checksums verified.
    pub fn keys(&self) -> Result<Vec<(String, Value)>> {
        self.verify()?;
        let mut out = Vec::new();
        for path in self.records()? {
            let (key, _) = parse_record(&fs::read_to_string(&path)?).map_err(|m| corrupt(&path, &m))?;
            let module = path.parent().and_then(Path::file_name).and_then(|s| s.to_str()).unwrap_or_default();
            out.push((module.to_string(), key));
        }
        Ok(out)
    }

    /// Removes every record; returns how many there were.
    pub fn clear(&self) -> Result<usize> {
        let records = self.records()?;
        for path in &records {
            fs::remove_file(path)?;
        }
        Ok(records.len())
    }
}

fn corrupt(path: &Path, msg: &str) -> Error {
    Error::CacheCorrupt(format!("{}: {msg}", path.display()))
}

fn parse_record(text: &str) -> std::result::Result<(Value, Value), String> {
    let v: Value = serde_json::from_str(text).map_err(|e| format!("unreadable record: {e}"))?;
    let key = v.get("key").ok_or("missing key")?.clone();
    let payload = v.get("payload").ok_or("missing payload")?.clone();
    let checksum = v.get("checksum").and_then(Value::as_str).ok_or("missing checksum")?;
    if digest(payload.to_string().as_bytes()) != checksum {
        return Err("checksum mismatch".into());
    }
    Ok((key, payload))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        let key = json!({"module": "t", "n": 3});
        assert!(cache.get("t", &key).unwrap().is_none());
        cache.put("t", &key, &json!({"dims": [1, 2]})).unwrap();
        assert_eq!(cache.get("t", &key).unwrap().unwrap(), json!({"dims": [1, 2]}));
        assert_eq!(cache.verify().unwrap(), 1);
        let path = cache.records().unwrap().pop().unwrap();
        let text = fs::read_to_string(&path).unwrap().replace("[1,2]", "[1,3]");
        fs::write(&path, text).unwrap();
        assert!(matches!(cache.get("t", &key), Err(Error::CacheCorrupt(_))));
        assert!(matches!(cache.verify(), Err(Error::CacheCorrupt(_))));
        assert_eq!(cache.clear().unwrap(), 1);
        assert!(Cache::disabled().get("t", &key).unwrap().is_none());
    }
}
