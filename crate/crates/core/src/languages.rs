//! File extension to language mapping.
//!
//! The default table covers the 33 language buckets used for role profiling,
//! including the catch-all `Others` bucket for anything unmapped.

use std::collections::HashMap;

/// Name of the bucket that collects unmapped files.
pub const OTHERS: &str = "Others";

/// Default language buckets, in report order.
pub const DEFAULT_LANGUAGES: [&str; 33] = [
    "Batchfile",
    "C",
    "C#",
    "C++",
    "CMake",
    "CSS",
    "Dockerfile",
    "FreeMarker",
    "Go",
    "HCL",
    "HTML",
    "Handlebars",
    "Java",
    "JavaScript",
    "Jupyter NB",
    "Kotlin",
    "Less",
    "Lua",
    "Makefile",
    "Markdown",
    OTHERS,
    "PLSQL",
    "PowerShell",
    "Python",
    "Ruby",
    "Rust",
    "SCSS",
    "Shell",
    "Smarty",
    "Thrift",
    "TypeScript",
    "Vue",
    "YAML",
];

const EXTENSIONS: &[(&str, &str)] = &[
    ("bat", "Batchfile"),
    ("cmd", "Batchfile"),
    ("c", "C"),
    ("h", "C"),
    ("cs", "C#"),
    ("csx", "C#"),
    ("cpp", "C++"),
    ("cc", "C++"),
    ("cxx", "C++"),
    ("c++", "C++"),
    ("hpp", "C++"),
    ("hh", "C++"),
    ("hxx", "C++"),
    ("cmake", "CMake"),
    ("css", "CSS"),
    ("dockerfile", "Dockerfile"),
    ("ftl", "FreeMarker"),
    ("ftlh", "FreeMarker"),
    ("go", "Go"),
    ("hcl", "HCL"),
    ("tf", "HCL"),
    ("tfvars", "HCL"),
    ("html", "HTML"),
    ("htm", "HTML"),
    ("xhtml", "HTML"),
    ("hbs", "Handlebars"),
    ("handlebars", "Handlebars"),
    ("java", "Java"),
    ("js", "JavaScript"),
    ("jsx", "JavaScript"),
    ("mjs", "JavaScript"),
    ("cjs", "JavaScript"),
    ("ipynb", "Jupyter NB"),
    ("kt", "Kotlin"),
    ("kts", "Kotlin"),
    ("less", "Less"),
    ("lua", "Lua"),
    ("mk", "Makefile"),
    ("mak", "Makefile"),
    ("md", "Markdown"),
    ("markdown", "Markdown"),
    ("pls", "PLSQL"),
    ("plsql", "PLSQL"),
    ("pks", "PLSQL"),
    ("pkb", "PLSQL"),
    ("sql", "PLSQL"),
    ("ps1", "PowerShell"),
    ("psm1", "PowerShell"),
    ("psd1", "PowerShell"),
    ("py", "Python"),
    ("pyi", "Python"),
    ("rb", "Ruby"),
    ("rake", "Ruby"),
    ("rs", "Rust"),
    ("scss", "SCSS"),
    ("sass", "SCSS"),
    ("sh", "Shell"),
    ("bash", "Shell"),
    ("zsh", "Shell"),
    ("tpl", "Smarty"),
    ("thrift", "Thrift"),
    ("ts", "TypeScript"),
    ("tsx", "TypeScript"),
    ("vue", "Vue"),
    ("yml", "YAML"),
    ("yaml", "YAML"),
];

/// Whole-basename matches, checked before extensions.
const BASENAMES: &[(&str, &str)] = &[
    ("Dockerfile", "Dockerfile"),
    ("Makefile", "Makefile"),
    ("makefile", "Makefile"),
    ("GNUmakefile", "Makefile"),
    ("CMakeLists.txt", "CMake"),
    ("Rakefile", "Ruby"),
    ("Gemfile", "Ruby"),
];

/// Maps file paths to language buckets.
#[derive(Debug, Clone)]
pub struct LanguageMap {
    languages: Vec<String>,
    by_extension: HashMap<String, usize>,
    by_basename: HashMap<String, usize>,
    others: usize,
}

impl Default for LanguageMap {
    fn default() -> Self {
        let languages: Vec<String> = DEFAULT_LANGUAGES.iter().map(|s| s.to_string()).collect();
        let index = |name: &str| languages.iter().position(|l| l == name).unwrap();
        let by_extension = EXTENSIONS
            .iter()
            .map(|(ext, lang)| (ext.to_string(), index(lang)))
            .collect();
        let by_basename = BASENAMES
            .iter()
            .map(|(name, lang)| (name.to_string(), index(lang)))
            .collect();
        let others = index(OTHERS);
        Self {
            languages,
            by_extension,
            by_basename,
            others,
        }
    }
}

impl LanguageMap {
    pub fn languages(&self) -> &[String] {
        &self.languages
    }

    pub fn others_index(&self) -> usize {
        self.others
    }

    /// Language index for a path, or `None` when neither basename nor
    /// extension is mapped.
    pub fn lookup(&self, path: &str) -> Option<usize> {
        let base = basename(path);
        if let Some(&i) = self.by_basename.get(base) {
            return Some(i);
        }
        // Dockerfile.prod, api.Dockerfile
        if base.starts_with("Dockerfile.") {
            return self.by_basename.get("Dockerfile").copied();
        }
        let ext = extension(base)?;
        self.by_extension.get(&ext.to_ascii_lowercase()).copied()
    }

    /// True when the basename alone identifies a language (`Makefile`, `CMakeLists.txt`).
    pub fn is_language_basename(&self, base: &str) -> bool {
        self.by_basename.contains_key(base) || base.starts_with("Dockerfile.")
    }

    /// Language index for a path, falling back to `Others`.
    pub fn bucket(&self, path: &str) -> usize {
        self.lookup(path).unwrap_or(self.others)
    }

    /// True when the path maps to a real language (not `Others`).
    pub fn is_mapped(&self, path: &str) -> bool {
        self.lookup(path).is_some()
    }
}

pub(crate) fn basename(path: &str) -> &str {
    path.rsplit('/').next().unwrap_or(path)
}

/// Extension of a basename without the dot. Dotfiles like `.gitignore` have none.
pub(crate) fn extension(base: &str) -> Option<&str> {
    let dot = base.rfind('.')?;
    if dot == 0 || dot + 1 == base.len() {
        return None;
    }
    Some(&base[dot + 1..])
}
