//! Commit enumeration through the `git` command-line client.

use std::path::Path;
use std::process::Command;

use serde::{Deserialize, Serialize};

use super::identity::{resolve_identity, AliasMap, AuthorIdentity};
use super::manifest::ProjectManifest;
use crate::error::{Error, Result};

/// One mined commit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommitRecord {
    pub sha: String,
    pub author_id: AuthorIdentity,
    /// Author time, UTC seconds since the epoch.
    pub timestamp: i64,
    /// Repository-relative paths changed by the commit.
    pub files: Vec<String>,
    pub is_merge: bool,
}

const RECORD_SEP: char = '\u{1e}';
const FIELD_SEP: char = '\u{1f}';

fn git(repo: &Path, args: &[&str]) -> Result<std::process::Output> {
    Command::new("git")
        .arg("-C")
        .arg(repo)
        .args(["-c", "core.quotepath=off", "-c", "log.showSignature=false"])
        .args(args)
        .env("GIT_CONFIG_NOSYSTEM", "1")
        .env("LC_ALL", "C")
        .output()
        .map_err(|e| Error::Repository {
            path: repo.to_path_buf(),
            message: format!("failed to run git: {e}"),
        })
}

fn git_stdout(repo: &Path, args: &[&str]) -> Result<String> {
    let out = git(repo, args)?;
    if !out.status.success() {
        return Err(Error::Repository {
            path: repo.to_path_buf(),
            message: String::from_utf8_lossy(&out.stderr).trim().to_string(),
        });
    }
    Ok(String::from_utf8_lossy(&out.stdout).into_owned())
}

/// Sha of `HEAD`, or `None` for a repository without commits.
pub fn head_sha(repo: &Path) -> Result<Option<String>> {
    git_stdout(repo, &["rev-parse", "--git-dir"])?;
    let out = git(repo, &["rev-parse", "--verify", "-q", "HEAD^{commit}"])?;
    if !out.status.success() {
        return Ok(None);
    }
    Ok(Some(String::from_utf8_lossy(&out.stdout).trim().to_string()))
}

fn is_shallow(repo: &Path) -> Result<bool> {
    Ok(git_stdout(repo, &["rev-parse", "--is-shallow-repository"])?.trim() == "true")
}

/// All non-merge commits on the first-parent history of `HEAD`, oldest first.
///
/// Commits are ordered by author timestamp; ties keep git's topological order.
pub fn enumerate_commits(manifest: &ProjectManifest, aliases: &AliasMap) -> Result<Vec<CommitRecord>> {
    let repo = manifest.repo_ref.as_path();
    if !repo.exists() {
        return Err(Error::Repository {
            path: repo.to_path_buf(),
            message: "path does not exist".into(),
        });
    }
    if head_sha(repo)?.is_none() {
        return Ok(Vec::new());
    }
    if is_shallow(repo)? {
        return Err(Error::ShallowClone(repo.to_path_buf()));
    }
    let format = format!("--format={RECORD_SEP}%H{FIELD_SEP}%an{FIELD_SEP}%ae{FIELD_SEP}%at{FIELD_SEP}%P");
    let log = git_stdout(
        repo,
        &[
            "log",
            "--first-parent",
            "--no-merges",
            "--no-renames",
            "--no-color",
            "--no-ext-diff",
            "--root",
            "--reverse",
            "--name-only",
            &format,
            "HEAD",
            "--",
        ],
    )?;
    let mut commits = parse_log(&log, aliases).map_err(|message| Error::Repository {
        path: repo.to_path_buf(),
        message,
    })?;
    commits.sort_by_key(|c| c.timestamp);
    Ok(commits)
}

fn parse_log(log: &str, aliases: &AliasMap) -> std::result::Result<Vec<CommitRecord>, String> {
    let mut commits = Vec::new();
    for chunk in log.split(RECORD_SEP).filter(|c| !c.trim().is_empty()) {
        let mut lines = chunk.lines();
        let header = lines.next().ok_or("empty log record")?;
        let fields: Vec<&str> = header.split(FIELD_SEP).collect();
        let [sha, name, email, time, parents] = fields[..] else {
            return Err(format!("malformed log header {header:?}"));
        };
        let timestamp: i64 = time
            .parse()
            .map_err(|_| format!("bad timestamp {time:?} on {sha}"))?;
        let is_merge = parents.split_whitespace().count() > 1;
        let mut files: Vec<String> = lines
            .filter(|l| !l.is_empty())
            .map(unquote_path)
            .collect();
        files.sort();
        files.dedup();
        if timestamp <= 0 {
            log::warn!("skipping commit {sha} with non-positive timestamp {timestamp}");
            continue;
        }
        if files.is_empty() && !is_merge {
            log::debug!("skipping empty commit {sha}");
            continue;
        }
        let author_id = resolve_identity(name, email, aliases)
            .map_err(|e| format!("commit {sha}: {e}"))?;
        commits.push(CommitRecord {
            sha: sha.to_string(),
            author_id,
            timestamp,
            files,
            is_merge,
        });
    }
    Ok(commits)
}

/// Undoes git's C-style quoting of unusual paths.
fn unquote_path(raw: &str) -> String {
    let Some(inner) = raw.strip_prefix('"').and_then(|r| r.strip_suffix('"')) else {
        return raw.to_string();
    };
    let mut bytes = Vec::with_capacity(inner.len());
    let mut it = inner.bytes().peekable();
    while let Some(b) = it.next() {
        if b != b'\\' {
            bytes.push(b);
            continue;
        }
        match it.next() {
            Some(b'n') => bytes.push(b'\n'),
            Some(b't') => bytes.push(b'\t'),
            Some(b'r') => bytes.push(b'\r'),
            Some(b'a') => bytes.push(0x07),
            Some(b'b') => bytes.push(0x08),
            Some(b'f') => bytes.push(0x0c),
            Some(b'v') => bytes.push(0x0b),
            Some(d @ b'0'..=b'7') => {
                let mut v = u32::from(d - b'0');
                for _ in 0..2 {
                    match it.peek() {
                        Some(&n @ b'0'..=b'7') => {
                            v = v * 8 + u32::from(n - b'0');
                            it.next();
                        }
                        _ => break,
                    }
                }
                bytes.push(v as u8);
            }
            Some(other) => bytes.push(other),
            None => bytes.push(b'\\'),
        }
    }
    String::from_utf8_lossy(&bytes).into_owned()
}
