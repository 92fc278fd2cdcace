use serde::{Deserialize, Serialize};

use crate::languages::{basename, extension, LanguageMap};

/// Coarse kind of a changed file. Only `Source` changes count toward
/// ownership metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FileKind {
    Source,
    Documentation,
    Setup,
    Other,
}

const DOC_EXTENSIONS: [&str; 4] = ["md", "rst", "txt", "adoc"];
const DOC_BASENAMES: [&str; 4] = ["LICENSE", "NOTICE", "AUTHORS", "CHANGELOG"];
const SETUP_BASENAMES: [&str; 4] = [".gitignore", ".gitattributes", ".editorconfig", ".travis.yml"];
const SETUP_DIRS: [&str; 2] = [".github", ".circleci"];

/// Classifies a repository-relative path.
///
/// Precedence: setup, then documentation, then source. CI configuration is
/// setup even though YAML is a mapped language. Files whose whole basename
/// is a language (`CMakeLists.txt`, `Makefile`) are source.
pub fn classify_file(path: &str, languages: &LanguageMap) -> FileKind {
    let base = basename(path);
    if SETUP_BASENAMES.contains(&base) || path.split('/').any(|c| SETUP_DIRS.contains(&c)) {
        return FileKind::Setup;
    }
    if languages.is_language_basename(base) {
        return FileKind::Source;
    }
    let ext = extension(base).map(str::to_ascii_lowercase);
    let stem = base.split('.').next().unwrap_or(base);
    if ext.as_deref().is_some_and(|e| DOC_EXTENSIONS.contains(&e))
        || DOC_BASENAMES.contains(&base)
        || DOC_BASENAMES.contains(&stem)
    {
        return FileKind::Documentation;
    }
    if languages.is_mapped(path) {
        FileKind::Source
    } else {
        FileKind::Other
    }
}
