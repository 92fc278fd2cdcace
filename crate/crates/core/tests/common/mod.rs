#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

/// Scripted git repository with fixed identities and dates.
pub struct FixtureRepo {
    pub path: PathBuf,
    clock: i64,
}

pub const BASE_TIME: i64 = 1_700_000_000;

impl FixtureRepo {
    pub fn init(path: &Path) -> Self {
        fs::create_dir_all(path).unwrap();
        let repo = Self {
            path: path.to_path_buf(),
            clock: BASE_TIME,
        };
        repo.git(&["init", "-q", "-b", "main"]);
        repo
    }

    pub fn git(&self, args: &[&str]) -> String {
        self.git_at(args, self.clock)
    }

    fn git_at(&self, args: &[&str], time: i64) -> String {
        let date = format!("@{time} +0000");
        let out = Command::new("git")
            .arg("-C")
            .arg(&self.path)
            .args(["-c", "commit.gpgsign=false", "-c", "user.name=Fixture", "-c", "user.email=fixture@example.org"])
            .args(args)
            .env("GIT_AUTHOR_DATE", &date)
            .env("GIT_COMMITTER_DATE", &date)
            .env("GIT_CONFIG_NOSYSTEM", "1")
            .env("HOME", &self.path)
            .output()
            .expect("git runs");
        assert!(
            out.status.success(),
            "git {args:?} failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        String::from_utf8(out.stdout).unwrap()
    }

    /// Writes the files and commits them as `author <email>`, one hour after
    /// the previous commit.
    pub fn commit(&mut self, author: &str, email: &str, files: &[(&str, &str)]) -> String {
        for (name, content) in files {
            let p = self.path.join(name);
            fs::create_dir_all(p.parent().unwrap()).unwrap();
            fs::write(p, content).unwrap();
        }
        self.git(&["add", "-A"]);
        self.clock += 3600;
        let who = format!("{author} <{email}>");
        self.git(&["commit", "-q", "--author", &who, "-m", "change"]);
        self.git(&["rev-parse", "HEAD"]).trim().to_string()
    }

    pub fn commit_touching(&mut self, author: &str, paths: &[&str]) -> String {
        let email = format!("{}@example.org", author.to_lowercase());
        let stamp = format!("{}\n", self.clock);
        let files: Vec<(&str, &str)> = paths.iter().map(|p| (*p, stamp.as_str())).collect();
        self.commit(author, &email, &files)
    }

    pub fn advance(&mut self, seconds: i64) {
        self.clock += seconds;
    }
}

/// Writes a manifest next to the repository and returns its path.
pub fn write_manifest(dir: &Path, name: &str, repo: &Path, microservices: &[&str], as_of: &str) -> PathBuf {
    let path = dir.join(format!("{name}.json"));
    let body = serde_json::json!({
        "name": name,
        "repo_path": repo,
        "microservices": microservices,
        "as_of": as_of,
    });
    fs::write(&path, serde_json::to_vec_pretty(&body).unwrap()).unwrap();
    path
}

/// Snapshot date a few days after the fixture commits.
pub const AS_OF: &str = "2023-11-20";

/// Two microservices, two developers that each own one: ONE_MS_PER_DEVELOPER.
pub fn split_project(root: &Path) -> PathBuf {
    let mut r = FixtureRepo::init(&root.join("split"));
    r.commit_touching("Alice", &["api/main.go", "README.md"]);
    r.commit_touching("Bob", &["web/app.js"]);
    r.commit_touching("Alice", &["api/handler.go"]);
    r.commit_touching("Bob", &["web/style.css", "web/index.html"]);
    write_manifest(root, "split", &r.path, &["api", "web"], AS_OF)
}

/// Three microservices; only Carol touches all of them: ONE_DEV_ALL_MS.
pub fn shared_project(root: &Path) -> PathBuf {
    let mut r = FixtureRepo::init(&root.join("shared"));
    r.commit_touching("Carol", &["svc-a/a.py"]);
    r.commit_touching("Carol", &["svc-b/b.py", "svc-b/Dockerfile"]);
    r.commit_touching("Dave", &["svc-a/x.py"]);
    r.commit_touching("Carol", &["svc-c/c.java"]);
    r.commit_touching("Carol", &["svc-a/a2.py"]);
    r.commit_touching("Erin", &["svc-c/d.java", "svc-c/pom.xml"]);
    write_manifest(root, "shared", &r.path, &["svc-a", "svc-b", "svc-c"], AS_OF)
}

const POLYGLOT_EXT: [&str; 6] = ["go", "py", "js", "css", "md", "sh"];

/// Sixteen developers with scripted per-language file counts, spread over
/// four microservices: MULTI_DEV_SOME_MS. Gives the factor analysis enough
/// contributors.
pub fn polyglot_project(root: &Path) -> PathBuf {
    let mut r = FixtureRepo::init(&root.join("polyglot"));
    let services = ["core", "ui", "ops", "docs"];
    let mut state: u64 = 0x2545_f491;
    for d in 0..16 {
        let name = format!("Dev{d:02}");
        let mut paths = Vec::new();
        for (l, ext) in POLYGLOT_EXT.iter().enumerate() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            // profile: backend-ish devs favour go/py, web devs js/css
            let bias = if (d % 2 == 0) == (l < 2) { 3 } else { 0 };
            let n = ((state >> 33) % 3) as usize + bias;
            for i in 0..n {
                let svc = services[(d + l) % if d < 4 { 1 } else { 2 }];
                paths.push(format!("{svc}/{name}_{l}_{i}.{ext}"));
            }
        }
        let refs: Vec<&str> = paths.iter().map(String::as_str).collect();
        r.commit_touching(&name, &refs);
    }
    write_manifest(root, "polyglot", &r.path, &services, AS_OF)
}

/// All three fixture projects.
pub fn corpus(root: &Path) -> Vec<PathBuf> {
    vec![split_project(root), shared_project(root), polyglot_project(root)]
}
