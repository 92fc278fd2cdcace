//! Newline-delimited JSON commit cache.
//!
//! One `CommitRecord` per line. The file name encodes the cache key: the
//! repository head, the manifest hash and the alias table.

use std::fs;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::git::CommitRecord;
use super::identity::AliasMap;
use super::manifest::ProjectManifest;
use crate::error::{Error, Result};
use crate::report::write_atomic;

/// Cache key for one project snapshot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheKey {
    pub head_sha: String,
    pub manifest_hash: String,
    pub alias_hash: String,
}

impl CacheKey {
    pub fn new(head_sha: Option<&str>, manifest: &ProjectManifest, aliases: &AliasMap) -> Self {
        Self {
            head_sha: head_sha.unwrap_or("empty").to_string(),
            manifest_hash: manifest.content_hash(),
            alias_hash: hex::encode(Sha256::digest(aliases.fingerprint().as_bytes())),
        }
    }

    fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.head_sha.as_bytes());
        h.update([0]);
        h.update(self.manifest_hash.as_bytes());
        h.update([0]);
        h.update(self.alias_hash.as_bytes());
        hex::encode(h.finalize())[..24].to_string()
    }

    pub fn file_in(&self, dir: &Path, project: &str) -> PathBuf {
        let safe: String = project
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
            .collect();
        dir.join(format!("{safe}-{}.ndjson", self.digest()))
    }
}

pub fn encode_commits(commits: &[CommitRecord]) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    for c in commits {
        serde_json::to_writer(&mut out, c)?;
        out.push(b'\n');
    }
    Ok(out)
}

pub fn write_cache(path: &Path, commits: &[CommitRecord]) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    write_atomic(path, &encode_commits(commits)?)
}

/// Reads a cache file. `Ok(None)` when it does not exist.
pub fn read_cache(path: &Path) -> Result<Option<Vec<CommitRecord>>> {
    let file = match fs::File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(Error::io(path, e)),
    };
    let mut commits = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let record = serde_json::from_str(&line).map_err(|e| Error::Cache {
            path: path.to_path_buf(),
            message: format!("line {}: {e}", i + 1),
        })?;
        commits.push(record);
    }
    Ok(Some(commits))
}
