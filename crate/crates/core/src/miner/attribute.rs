use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::classify::{classify_file, FileKind};
use super::git::CommitRecord;
use super::identity::AuthorIdentity;
use super::manifest::ProjectManifest;
use crate::languages::LanguageMap;

/// Attribution of one commit to one microservice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TouchEvent {
    pub author_id: AuthorIdentity,
    pub microservice: String,
    pub timestamp: i64,
    pub sha: String,
    /// `Source` if any attributed file is source code; otherwise the first of
    /// documentation, setup, other that occurs.
    pub file_kind: FileKind,
    /// The commit's files attributed to this microservice.
    pub files: Vec<String>,
}

/// Longest-prefix matcher over '/'-separated path components.
#[derive(Debug, Clone)]
pub struct MicroserviceMatcher {
    // (components, name), longest first
    roots: Vec<(Vec<String>, String)>,
}

impl MicroserviceMatcher {
    pub fn new(paths: &[String]) -> Self {
        let mut roots: Vec<(Vec<String>, String)> = paths
            .iter()
            .map(|p| (p.split('/').map(str::to_string).collect(), p.clone()))
            .collect();
        roots.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.1.cmp(&b.1)));
        Self { roots }
    }

    /// The most specific microservice containing `file`, if any.
    pub fn match_path(&self, file: &str) -> Option<&str> {
        let comps: Vec<&str> = file.split('/').collect();
        self.roots
            .iter()
            .find(|(root, _)| {
                root.len() < comps.len() && root.iter().zip(&comps).all(|(a, b)| a == b)
            })
            .map(|(_, name)| name.as_str())
    }
}

/// Emits one touch event per (commit, microservice) pair with at least one
/// changed file under that microservice.
///
/// Output is ordered by (author key, timestamp, sha, microservice).
pub fn attribute_touches(
    manifest: &ProjectManifest,
    commits: &[CommitRecord],
    languages: &LanguageMap,
) -> Vec<TouchEvent> {
    let matcher = MicroserviceMatcher::new(&manifest.microservice_paths);
    let mut events = Vec::new();
    for commit in commits {
        let mut per_service: BTreeMap<&str, Vec<&String>> = BTreeMap::new();
        for file in &commit.files {
            if let Some(ms) = matcher.match_path(file) {
                per_service.entry(ms).or_default().push(file);
            }
        }
        for (ms, files) in per_service {
            let file_kind = files
                .iter()
                .map(|f| classify_file(f, languages))
                .min()
                .expect("non-empty file group");
            events.push(TouchEvent {
                author_id: commit.author_id.clone(),
                microservice: ms.to_string(),
                timestamp: commit.timestamp,
                sha: commit.sha.clone(),
                file_kind,
                files: files.into_iter().cloned().collect(),
            });
        }
    }
    sort_touches(&mut events);
    events
}

pub(crate) fn sort_touches(events: &mut [TouchEvent]) {
    events.sort_by(|a, b| {
        (&a.author_id.canonical_key, a.timestamp, &a.sha, &a.microservice).cmp(&(
            &b.author_id.canonical_key,
            b.timestamp,
            &b.sha,
            &b.microservice,
        ))
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::NaiveDate;

    fn manifest(paths: &[&str]) -> ProjectManifest {
        ProjectManifest::new("p", "/r", paths, NaiveDate::from_ymd_opt(2022, 1, 1).unwrap()).unwrap()
    }

    fn commit(sha: &str, t: i64, files: &[&str]) -> CommitRecord {
        CommitRecord {
            sha: sha.into(),
            author_id: AuthorIdentity {
                canonical_key: "ada@x".into(),
                display_name: "Ada".into(),
            },
            timestamp: t,
            files: files.iter().map(|s| s.to_string()).collect(),
            is_merge: false,
        }
    }

    fn touches(paths: &[&str], commits: &[CommitRecord]) -> Vec<TouchEvent> {
        attribute_touches(&manifest(paths), commits, &LanguageMap::default())
    }

    #[test]
    fn one_event_per_service_per_commit() {
        let ev = touches(&["svc-a", "svc-b"], &[commit("c1", 1, &["svc-a/x.go", "svc-a/y.go"])]);
        assert_eq!(ev.len(), 1);
        assert_eq!(ev[0].microservice, "svc-a");
        assert_eq!(ev[0].files.len(), 2);
    }

    #[test]
    fn multi_service_commit_yields_events_ordered_by_name() {
        let ev = touches(&["svc-a", "svc-b"], &[commit("c1", 1, &["svc-b/z.go", "svc-a/x.go"])]);
        let names: Vec<_> = ev.iter().map(|e| e.microservice.as_str()).collect();
        assert_eq!(names, ["svc-a", "svc-b"]);
        assert!(ev.iter().all(|e| e.timestamp == 1));
    }

    #[test]
    fn unmatched_files_yield_nothing() {
        assert!(touches(&["svc-a"], &[commit("c1", 1, &["docs/guide.md"])]).is_empty());
    }

    #[test]
    fn component_prefix_not_string_prefix() {
        let ev = touches(&["svc-1", "svc-10"], &[commit("c1", 1, &["svc-10/f.go"])]);
        assert_eq!(ev.len(), 1);
        assert_eq!(ev[0].microservice, "svc-10");
        assert!(touches(&["svc-1"], &[commit("c1", 1, &["svc-10/f.go"])]).is_empty());
    }

    #[test]
    fn nested_paths_use_longest_prefix() {
        let ev = touches(&["a", "a/b"], &[commit("c1", 1, &["a/b/f.go", "a/g.go"])]);
        let names: Vec<_> = ev.iter().map(|e| (e.microservice.as_str(), e.files.clone())).collect();
        assert_eq!(
            names,
            [("a", vec!["a/g.go".to_string()]), ("a/b", vec!["a/b/f.go".to_string()])]
        );
    }

    #[test]
    fn file_kind_prefers_source() {
        let ev = touches(&["svc"], &[commit("c1", 1, &["svc/README.md", "svc/main.go"])]);
        assert_eq!(ev[0].file_kind, FileKind::Source);
        let ev = touches(&["svc"], &[commit("c1", 1, &["svc/README.md", "svc/.gitignore"])]);
        assert_eq!(ev[0].file_kind, FileKind::Documentation);
    }

    #[test]
    fn the_service_root_itself_is_not_a_file_under_it() {
        // A file literally named like the root is not inside it.
        assert!(touches(&["svc"], &[commit("c1", 1, &["svc"])]).is_empty());
    }
}
