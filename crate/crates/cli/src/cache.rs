//! Advisory on-disk cache of command payloads, one JSON file per input digest.
//!
//! Entries are written to a temporary file and renamed into place. An entry
//! that fails to parse, or that was written for another digest, command or
//! artifact version, is ignored and overwritten.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::commands::ARTIFACT_VERSION;

#[derive(Debug, Clone, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: Some(dir.into()) }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn entry_path(&self, digest: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{digest}.json")))
    }

    pub fn load(&self, digest: &str, command: &str) -> Option<Value> {
        let text = fs::read_to_string(self.entry_path(digest)?).ok()?;
        let mut entry: Value = serde_json::from_str(&text).ok()?;
        let matches = entry.get("input_digest")?.as_str()? == digest
            && entry.get("command")?.as_str()? == command
            && entry.get("artifact_version")?.as_str()? == ARTIFACT_VERSION;
        if !matches {
            return None;
        }
        entry.get_mut("payload").map(Value::take)
    }

    pub fn store(&self, digest: &str, command: &str, payload: &Value) -> std::io::Result<()> {
        let (Some(dir), Some(path)) = (self.dir.as_ref(), self.entry_path(digest)) else {
            return Ok(());
        };
        fs::create_dir_all(dir)?;
        let entry = json!({
            "artifact_version": ARTIFACT_VERSION,
            "command": command,
            "input_digest": digest,
            "payload": payload,
        });
        let tmp = dir.join(format!(".{digest}.{}.tmp", std::process::id()));
        let mut file = fs::File::create(&tmp)?;
        file.write_all(entry.to_string().as_bytes())?;
        file.sync_all()?;
        drop(file);
        fs::rename(&tmp, &path).inspect_err(|_| {
            let _ = fs::remove_file(&tmp);
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn store_then_load() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        let payload = json!({"x": [1, "9007199254740993"]});
        assert_eq!(cache.load("abc", "cmd"), None);
        cache.store("abc", "cmd", &payload).unwrap();
        assert_eq!(cache.load("abc", "cmd"), Some(payload));
        assert_eq!(cache.load("abc", "other"), None);
        // no temporary files are left behind
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn corrupted_entries_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        fs::write(cache.entry_path("abc").unwrap(), "{\"payload\": [1, 2").unwrap();
        assert_eq!(cache.load("abc", "cmd"), None);
        fs::write(cache.entry_path("abc").unwrap(), json!({"input_digest": "xyz", "payload": 1}).to_string()).unwrap();
        assert_eq!(cache.load("abc", "cmd"), None);
    }

    #[test]
    fn disabled_cache_is_a_no_op() {
        let cache = Cache::disabled();
        cache.store("abc", "cmd", &json!(1)).unwrap();
        assert_eq!(cache.load("abc", "cmd"), None);
    }
}
