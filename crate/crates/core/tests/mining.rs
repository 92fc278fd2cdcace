mod common;

use std::process::Command;

use chrono::NaiveDate;
use common::{FixtureRepo, BASE_TIME};
use msdev::languages::LanguageMap;
use msdev::metrics::{commit_back_count, ProjectMetrics, SequenceMode, StrategyLabel};
use msdev::miner::{attribute_touches, enumerate_commits, mine_project, AliasMap, FileKind, ProjectManifest};
use msdev::Error;

fn manifest(repo: &std::path::Path, services: &[&str]) -> ProjectManifest {
    ProjectManifest::new("fixture", repo, services, NaiveDate::from_ymd_opt(2023, 11, 20).unwrap()).unwrap()
}

#[test]
fn three_commits_in_author_order() {
    let dir = tempfile::tempdir().unwrap();
    let mut r = FixtureRepo::init(dir.path());
    let a = r.commit("Alice", "Alice@Example.org", &[("m1/a.go", "1")]);
    let b = r.commit("Bob", "bob@example.org", &[("m2/b.go", "1"), ("m2/README.md", "x")]);
    let c = r.commit("Alice Smith", "alice@example.org ", &[("m1/a.go", "2")]);
    let commits = enumerate_commits(&manifest(&r.path, &["m1", "m2"]), &AliasMap::default()).unwrap();
    let shas: Vec<&str> = commits.iter().map(|c| c.sha.as_str()).collect();
    assert_eq!(shas, [a.as_str(), b.as_str(), c.as_str()]);
    assert_eq!(commits[0].timestamp, BASE_TIME + 3600);
    assert_eq!(commits[0].author_id.canonical_key, "alice@example.org");
    assert_eq!(commits[2].author_id.canonical_key, "alice@example.org");
    assert_eq!(commits[1].files, ["m2/README.md", "m2/b.go"]);
    assert!(commits.iter().all(|c| !c.is_merge));
}

#[test]
fn empty_repository_yields_no_commits() {
    let dir = tempfile::tempdir().unwrap();
    let r = FixtureRepo::init(dir.path());
    let commits = enumerate_commits(&manifest(&r.path, &["m1"]), &AliasMap::default()).unwrap();
    assert!(commits.is_empty());
}

#[test]
fn missing_repository_is_a_mining_error() {
    let dir = tempfile::tempdir().unwrap();
    let err = enumerate_commits(&manifest(&dir.path().join("nope"), &["m1"]), &AliasMap::default()).unwrap_err();
    assert_eq!(err.exit_code(), 3, "{err}");
}

#[test]
fn merge_follows_first_parent() {
    let dir = tempfile::tempdir().unwrap();
    let mut r = FixtureRepo::init(dir.path());
    r.commit("Alice", "alice@example.org", &[("m1/a.go", "1")]);
    r.git(&["checkout", "-q", "-b", "feature"]);
    r.commit("Bob", "bob@example.org", &[("m2/b.go", "1")]);
    r.git(&["checkout", "-q", "main"]);
    r.advance(60);
    r.git(&["merge", "-q", "--no-ff", "-m", "merge feature", "feature"]);
    r.commit("Alice", "alice@example.org", &[("m1/a.go", "2")]);
    let commits = enumerate_commits(&manifest(&r.path, &["m1", "m2"]), &AliasMap::default()).unwrap();
    assert_eq!(commits.len(), 2);
    assert!(commits.iter().all(|c| c.author_id.canonical_key == "alice@example.org" && !c.is_merge));
}

#[test]
fn shallow_clone_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let mut r = FixtureRepo::init(&dir.path().join("origin"));
    r.commit("Alice", "alice@example.org", &[("m1/a.go", "1")]);
    r.commit("Alice", "alice@example.org", &[("m1/a.go", "2")]);
    let clone = dir.path().join("clone");
    let url = format!("file://{}", r.path.display());
    let status = Command::new("git")
        .args(["clone", "-q", "--depth", "1", &url])
        .arg(&clone)
        .status()
        .unwrap();
    assert!(status.success());
    let err = enumerate_commits(&manifest(&clone, &["m1"]), &AliasMap::default()).unwrap_err();
    assert!(matches!(err, Error::ShallowClone(_)), "{err}");
    assert_eq!(err.exit_code(), 3);
}

#[test]
fn aliases_merge_identities() {
    let dir = tempfile::tempdir().unwrap();
    let mut r = FixtureRepo::init(dir.path());
    r.commit("Alice", "alice@work.example", &[("m1/a.go", "1")]);
    r.commit("Alice", "alice@home.example", &[("m2/a.go", "1")]);
    let mut aliases = AliasMap::default();
    aliases.insert("alice@home.example", "alice@work.example");
    let commits = enumerate_commits(&manifest(&r.path, &["m1", "m2"]), &aliases).unwrap();
    assert!(commits.iter().all(|c| c.author_id.canonical_key == "alice@work.example"));
}

#[test]
fn multi_service_commit_touches_each_service_once() {
    let dir = tempfile::tempdir().unwrap();
    let mut r = FixtureRepo::init(dir.path());
    r.commit(
        "Alice",
        "alice@example.org",
        &[("m1/a.go", "1"), ("m1/b.go", "1"), ("m2/c.go", "1"), ("root.txt", "1")],
    );
    let m = manifest(&r.path, &["m1", "m2"]);
    let commits = enumerate_commits(&m, &AliasMap::default()).unwrap();
    let touches = attribute_touches(&m, &commits, &LanguageMap::default());
    let services: Vec<&str> = touches.iter().map(|t| t.microservice.as_str()).collect();
    assert_eq!(services, ["m1", "m2"]);
    assert!(touches.iter().all(|t| t.file_kind == FileKind::Source));
    assert_eq!(touches[0].files, ["m1/a.go", "m1/b.go"]);
}

#[test]
fn commit_back_on_scripted_history() {
    let dir = tempfile::tempdir().unwrap();
    let mut r = FixtureRepo::init(dir.path());
    r.commit("Alice", "alice@example.org", &[("m1/a.go", "1")]);
    r.commit("Alice", "alice@example.org", &[("m2/a.go", "1")]);
    r.commit("Bob", "bob@example.org", &[("m1/b.go", "1")]);
    r.commit("Bob", "bob@example.org", &[("m2/b.go", "1")]);
    r.commit("Bob", "bob@example.org", &[("m1/b.go", "2")]);
    let m = manifest(&r.path, &["m1", "m2"]);
    let commits = enumerate_commits(&m, &AliasMap::default()).unwrap();
    let touches = attribute_touches(&m, &commits, &LanguageMap::default());
    let metrics = ProjectMetrics::compute(&m, &touches, SequenceMode::AllTouches);
    let back: Vec<(&str, usize)> = metrics.developers.iter().map(|d| (d.key.as_str(), d.commit_back)).collect();
    assert_eq!(back, [("alice@example.org", 0), ("bob@example.org", 1)]);
    assert_eq!(metrics.strategy, StrategyLabel::MultiDevAllMs);
    assert_eq!(commit_back_count(&["m1", "m2", "m1"]), 1);
}

#[test]
fn cache_round_trip_matches_cold_run() {
    let dir = tempfile::tempdir().unwrap();
    let mut r = FixtureRepo::init(&dir.path().join("repo"));
    r.commit("Alice", "alice@example.org", &[("m1/a.go", "1")]);
    r.commit("Bob", "bob@example.org", &[("m2/\u{e9}t\u{e9} file.go", "1")]);
    let m = manifest(&r.path, &["m1", "m2"]);
    let cache = dir.path().join("cache");
    let cold = mine_project(&m, &AliasMap::default(), Some(&cache)).unwrap();
    assert!(!cold.cache_hit);
    let warm = mine_project(&m, &AliasMap::default(), Some(&cache)).unwrap();
    assert!(warm.cache_hit);
    assert_eq!(cold.commits, warm.commits);
    assert_eq!(warm.commits[1].files, ["m2/\u{e9}t\u{e9} file.go"]);

    r.commit("Carol", "carol@example.org", &[("m1/c.go", "1")]);
    let moved = mine_project(&m, &AliasMap::default(), Some(&cache)).unwrap();
    assert!(!moved.cache_hit, "a new head invalidates the cache");
    assert_eq!(moved.commits.len(), 3);
}
