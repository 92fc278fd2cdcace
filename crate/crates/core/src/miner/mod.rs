//! Git history mining: manifests, commit enumeration, identity resolution,
//! file classification and microservice attribution.

pub mod attribute;
pub mod cache;
pub mod classify;
pub mod git;
pub mod identity;
pub mod manifest;

use std::path::Path;

pub use attribute::{attribute_touches, MicroserviceMatcher, TouchEvent};
pub use cache::CacheKey;
pub use classify::{classify_file, FileKind};
pub use git::{enumerate_commits, head_sha, CommitRecord};
pub use identity::{resolve_identity, AliasMap, AuthorIdentity};
pub use manifest::{load_manifest, ProjectManifest};

use crate::error::Result;

/// Commits of one project, plus whether they came from the cache.
#[derive(Debug, Clone)]
pub struct MinedProject {
    pub manifest: ProjectManifest,
    pub commits: Vec<CommitRecord>,
    pub cache_hit: bool,
}

/// Enumerates a project's commits, going through the commit cache when a
/// cache directory is given.
pub fn mine_project(
    manifest: &ProjectManifest,
    aliases: &AliasMap,
    cache_dir: Option<&Path>,
) -> Result<MinedProject> {
    let Some(dir) = cache_dir else {
        return Ok(MinedProject {
            manifest: manifest.clone(),
            commits: enumerate_commits(manifest, aliases)?,
            cache_hit: false,
        });
    };
    let head = head_sha(&manifest.repo_ref)?;
    let path = CacheKey::new(head.as_deref(), manifest, aliases).file_in(dir, &manifest.name);
    if let Some(commits) = cache::read_cache(&path)? {
        log::info!("{}: commit cache hit ({})", manifest.name, path.display());
        return Ok(MinedProject {
            manifest: manifest.clone(),
            commits,
            cache_hit: true,
        });
    }
    let commits = enumerate_commits(manifest, aliases)?;
    cache::write_cache(&path, &commits)?;
    Ok(MinedProject {
        manifest: manifest.clone(),
        commits,
        cache_hit: false,
    })
}
