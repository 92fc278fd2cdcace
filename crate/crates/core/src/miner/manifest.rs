use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// On-disk manifest layout.
#[derive(Debug, Deserialize, Serialize)]
struct RawManifest {
    name: String,
    repo_path: String,
    microservices: Vec<String>,
    as_of: NaiveDate,
}

/// A project to mine: where its clone lives and which directories are
/// microservices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectManifest {
    pub name: String,
    /// Local clone. Relative paths in the manifest file are resolved against
    /// the manifest's directory.
    pub repo_ref: PathBuf,
    /// Repository-relative microservice roots, normalized and sorted.
    pub microservice_paths: Vec<String>,
    /// Reference date for recency checks.
    pub as_of: NaiveDate,
}

/// Reads and validates a manifest file.
pub fn load_manifest(path: &Path) -> Result<ProjectManifest> {
    let text = fs::read_to_string(path).map_err(|e| Error::Manifest {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let raw: RawManifest = serde_json::from_str(&text).map_err(|e| Error::Manifest {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let mut repo = PathBuf::from(&raw.repo_path);
    if repo.is_relative() {
        if let Some(dir) = path.parent() {
            repo = dir.join(repo);
        }
    }
    ProjectManifest::new(raw.name, repo, raw.microservices, raw.as_of).map_err(|e| match e {
        Error::InvalidManifest(message) => Error::Manifest {
            path: path.to_path_buf(),
            message,
        },
        other => other,
    })
}

impl ProjectManifest {
    /// Builds a manifest, normalizing and validating microservice paths.
    pub fn new(
        name: impl Into<String>,
        repo_ref: impl Into<PathBuf>,
        microservices: impl IntoIterator<Item = impl AsRef<str>>,
        as_of: NaiveDate,
    ) -> Result<Self> {
        let name = name.into();
        if name.trim().is_empty() {
            return Err(Error::InvalidManifest("empty project name".into()));
        }
        let mut seen = HashSet::new();
        let mut paths = Vec::new();
        for raw in microservices {
            let raw = raw.as_ref();
            let norm = normalize_path(raw)?;
            if !seen.insert(norm.clone()) {
                return Err(Error::InvalidManifest(format!(
                    "duplicate microservice path {norm:?}"
                )));
            }
            paths.push(norm);
        }
        if paths.is_empty() {
            return Err(Error::InvalidManifest("empty microservice list".into()));
        }
        paths.sort();
        Ok(Self {
            name,
            repo_ref: repo_ref.into(),
            microservice_paths: paths,
            as_of,
        })
    }

    /// Stable content hash used as part of the commit cache key.
    pub fn content_hash(&self) -> String {
        let raw = RawManifest {
            name: self.name.clone(),
            repo_path: self.repo_ref.to_string_lossy().into_owned(),
            microservices: self.microservice_paths.clone(),
            as_of: self.as_of,
        };
        let bytes = serde_json::to_vec(&raw).expect("manifest serializes");
        hex::encode(Sha256::digest(&bytes))
    }
}

/// Unifies separators, strips `./` and trailing slashes, rejects absolute
/// paths and `..` components.
pub fn normalize_path(raw: &str) -> Result<String> {
    let unified = raw.trim().replace('\\', "/");
    if unified.starts_with('/') || has_drive_prefix(&unified) {
        return Err(Error::InvalidManifest(format!(
            "absolute microservice path {raw:?}"
        )));
    }
    let mut parts = Vec::new();
    for part in unified.split('/') {
        match part {
            "" | "." => {}
            ".." => {
                return Err(Error::InvalidManifest(format!(
                    "microservice path {raw:?} escapes the repository"
                )))
            }
            p => parts.push(p),
        }
    }
    if parts.is_empty() {
        return Err(Error::InvalidManifest(format!(
            "microservice path {raw:?} is empty"
        )));
    }
    Ok(parts.join("/"))
}

fn has_drive_prefix(p: &str) -> bool {
    let b = p.as_bytes();
    b.len() >= 2 && b[0].is_ascii_alphabetic() && b[1] == b':'
}

#[cfg(test)]
mod tests {
    use super::*;

    fn date() -> NaiveDate {
        NaiveDate::from_ymd_opt(2022, 6, 1).unwrap()
    }

    fn write(dir: &Path, body: &str) -> PathBuf {
        let p = dir.join("m.json");
        fs::write(&p, body).unwrap();
        p
    }

    #[test]
    fn trailing_slashes_are_stripped() {
        let m = ProjectManifest::new("p", "/r", ["svc-a/", "svc-b"], date()).unwrap();
        assert_eq!(m.microservice_paths, ["svc-a", "svc-b"]);
    }

    #[test]
    fn separators_are_unified() {
        let m = ProjectManifest::new("p", "/r", [r"services\api\", "./web//ui"], date()).unwrap();
        assert_eq!(m.microservice_paths, ["services/api", "web/ui"]);
    }

    #[test]
    fn empty_list_is_rejected() {
        let err = ProjectManifest::new("p", "/r", Vec::<String>::new(), date()).unwrap_err();
        assert!(err.to_string().contains("empty microservice list"));
    }

    #[test]
    fn duplicates_after_normalization_are_rejected() {
        let err = ProjectManifest::new("p", "/r", ["a/", "a"], date()).unwrap_err();
        assert!(err.to_string().contains("duplicate"));
    }

    #[test]
    fn absolute_paths_are_rejected() {
        assert!(ProjectManifest::new("p", "/r", ["/etc"], date()).is_err());
        assert!(ProjectManifest::new("p", "/r", ["C:/svc"], date()).is_err());
        assert!(ProjectManifest::new("p", "/r", ["../up"], date()).is_err());
    }

    #[test]
    fn empty_name_is_rejected() {
        assert!(ProjectManifest::new(" ", "/r", ["a"], date()).is_err());
    }

    #[test]
    fn load_from_file() {
        let dir = tempfile::tempdir().unwrap();
        let services: Vec<String> = (1..=11).map(|i| format!("services/svc-{i}/")).collect();
        let body = serde_json::json!({
            "name": "geoserver-cloud",
            "repo_path": "clone",
            "microservices": services,
            "as_of": "2022-06-01",
        });
        let p = write(dir.path(), &body.to_string());
        let m = load_manifest(&p).unwrap();
        assert_eq!(m.microservice_paths.len(), 11);
        assert_eq!(m.repo_ref, dir.path().join("clone"));
        assert_eq!(m.as_of, date());
    }

    #[test]
    fn malformed_file_is_a_parse_error() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(dir.path(), r#"{"name": "x"}"#);
        let err = load_manifest(&p).unwrap_err();
        assert!(matches!(err, Error::Manifest { .. }));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn hash_is_stable_and_content_sensitive() {
        let a = ProjectManifest::new("p", "/r", ["a", "b"], date()).unwrap();
        let b = ProjectManifest::new("p", "/r", ["b/", "a"], date()).unwrap();
        let c = ProjectManifest::new("p", "/r", ["a", "c"], date()).unwrap();
        assert_eq!(a.content_hash(), b.content_hash());
        assert_ne!(a.content_hash(), c.content_hash());
    }
}
