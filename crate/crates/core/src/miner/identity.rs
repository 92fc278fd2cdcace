use std::collections::HashMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A resolved developer. Two raw authors with the same `canonical_key` are
/// the same developer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AuthorIdentity {
    pub canonical_key: String,
    pub display_name: String,
}

impl AuthorIdentity {
    /// Heuristic bot detection: `[bot]` suffix on the name or the email local part.
    pub fn is_bot(&self) -> bool {
        let local = self
            .canonical_key
            .split('@')
            .next()
            .unwrap_or(&self.canonical_key);
        self.display_name.trim().to_lowercase().ends_with("[bot]") || local.ends_with("[bot]")
    }
}

/// Alias table mapping alternative keys to a canonical key.
///
/// File format: one `canonical<TAB>alias` pair per line; blank lines and
/// lines starting with `#` are ignored.
#[derive(Debug, Clone, Default)]
pub struct AliasMap {
    to_canonical: HashMap<String, String>,
}

impl AliasMap {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::AliasFile {
            path: path.to_path_buf(),
            line: 0,
            message: e.to_string(),
        })?;
        Self::parse(&text).map_err(|(line, message)| Error::AliasFile {
            path: path.to_path_buf(),
            line,
            message,
        })
    }

    pub fn parse(text: &str) -> std::result::Result<Self, (usize, String)> {
        let mut map = AliasMap::default();
        for (i, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (canonical, alias) = line
                .split_once('\t')
                .ok_or_else(|| (i + 1, "expected `canonical<TAB>alias`".to_string()))?;
            let canonical = normalize_key(canonical);
            let alias = normalize_key(alias);
            if canonical.is_empty() || alias.is_empty() {
                return Err((i + 1, "empty canonical or alias".to_string()));
            }
            map.insert(alias, canonical);
        }
        Ok(map)
    }

    pub fn insert(&mut self, alias: impl AsRef<str>, canonical: impl AsRef<str>) {
        self.to_canonical
            .insert(normalize_key(alias.as_ref()), normalize_key(canonical.as_ref()));
    }

    pub fn is_empty(&self) -> bool {
        self.to_canonical.is_empty()
    }

    fn resolve<'a>(&'a self, key: &'a str) -> &'a str {
        self.to_canonical.get(key).map(String::as_str).unwrap_or(key)
    }

    /// Order-independent fingerprint of the table, for cache keys.
    pub fn fingerprint(&self) -> String {
        let mut pairs: Vec<_> = self.to_canonical.iter().collect();
        pairs.sort();
        pairs
            .into_iter()
            .map(|(a, c)| format!("{c}\t{a}\n"))
            .collect()
    }
}

fn normalize_key(raw: &str) -> String {
    raw.trim().to_lowercase()
}

/// Resolves a raw git author into a canonical identity.
///
/// The key is the trimmed, lowercased email, falling back to the name when
/// the email is empty. Aliases are applied to that key.
pub fn resolve_identity(raw_name: &str, raw_email: &str, aliases: &AliasMap) -> Result<AuthorIdentity> {
    let email = normalize_key(raw_email);
    let name = raw_name.trim();
    let key = if !email.is_empty() {
        email
    } else if !name.is_empty() {
        normalize_key(name)
    } else {
        return Err(Error::EmptyIdentity);
    };
    let canonical_key = aliases.resolve(&key).to_string();
    let display_name = if name.is_empty() {
        canonical_key.clone()
    } else {
        name.to_string()
    };
    Ok(AuthorIdentity {
        canonical_key,
        display_name,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn email_is_case_folded() {
        let id = resolve_identity("Ada L.", "Ada@Example.COM", &AliasMap::default()).unwrap();
        assert_eq!(id.canonical_key, "ada@example.com");
        assert_eq!(id.display_name, "Ada L.");
    }

    #[test]
    fn name_is_the_fallback() {
        let id = resolve_identity("ada", "", &AliasMap::default()).unwrap();
        assert_eq!(id.canonical_key, "ada");
        let id = resolve_identity("  Ada  ", "   ", &AliasMap::default()).unwrap();
        assert_eq!(id.canonical_key, "ada");
    }

    #[test]
    fn alias_is_applied() {
        let aliases = AliasMap::parse("b@y\ta@x\n").unwrap();
        let id = resolve_identity("ada", "a@x", &aliases).unwrap();
        assert_eq!(id.canonical_key, "b@y");
    }

    #[test]
    fn both_empty_is_an_error() {
        assert!(matches!(
            resolve_identity(" ", "", &AliasMap::default()),
            Err(Error::EmptyIdentity)
        ));
    }

    #[test]
    fn alias_parse_errors_carry_line_numbers() {
        let err = AliasMap::parse("# header\n\nb@y a@x\n").unwrap_err();
        assert_eq!(err.0, 3);
    }

    #[test]
    fn bots() {
        let bot = resolve_identity(
            "dependabot[bot]",
            "49699333+dependabot[bot]@users.noreply.github.com",
            &AliasMap::default(),
        )
        .unwrap();
        assert!(bot.is_bot());
        let human = resolve_identity("Ada", "ada@x", &AliasMap::default()).unwrap();
        assert!(!human.is_bot());
    }
}
