//! Role × language relevance table.
//!
//! CSV layout: header row `role,<language>,...`; one row per role with
//! relevance values in `[0, 1]`.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::languages::{DEFAULT_LANGUAGES, OTHERS};

pub const OTHERS_ROLE: &str = "Others";

pub const DEFAULT_ROLES: [&str; 8] = [
    "Backend",
    "Frontend",
    "DevOps",
    "Data Scientist",
    "Mobile",
    "Documentation+",
    "Fullstack",
    OTHERS_ROLE,
];

/// Default relevance weights. Operator-tunable heuristics; edit the CSV to
/// change them.
const DEFAULT_WEIGHTS: &[(&str, &[(&str, f64)])] = &[
    (
        "Backend",
        &[
            ("C", 1.0),
            ("C++", 1.0),
            ("Java", 1.0),
            ("Go", 1.0),
            ("Rust", 1.0),
            ("C#", 1.0),
            ("Thrift", 0.8),
            ("Lua", 0.6),
            ("Ruby", 0.6),
            ("Kotlin", 0.4),
            ("PLSQL", 0.4),
        ],
    ),
    (
        "Frontend",
        &[
            ("CSS", 1.0),
            ("HTML", 1.0),
            ("JavaScript", 1.0),
            ("TypeScript", 1.0),
            ("Vue", 1.0),
            ("SCSS", 1.0),
            ("Less", 1.0),
            ("Handlebars", 1.0),
            ("Smarty", 1.0),
            ("FreeMarker", 0.6),
        ],
    ),
    (
        "DevOps",
        &[
            ("Dockerfile", 1.0),
            ("Shell", 1.0),
            ("HCL", 1.0),
            ("Makefile", 1.0),
            ("CMake", 1.0),
            ("Batchfile", 1.0),
            ("PowerShell", 1.0),
            ("YAML", 1.0),
        ],
    ),
    (
        "Data Scientist",
        &[("Jupyter NB", 1.0), ("Python", 1.0), ("PLSQL", 1.0)],
    ),
    ("Mobile", &[("Kotlin", 1.0), ("Java", 0.5), ("C#", 0.3)]),
    ("Documentation+", &[("Markdown", 1.0)]),
    (
        "Fullstack",
        &[
            ("JavaScript", 0.8),
            ("TypeScript", 0.8),
            ("Python", 0.5),
            ("Java", 0.5),
            ("Ruby", 0.5),
            ("Go", 0.4),
            ("HTML", 0.5),
            ("CSS", 0.5),
        ],
    ),
    (OTHERS_ROLE, &[(OTHERS, 1.0)]),
];

#[derive(Debug, Clone, PartialEq)]
pub struct RoleReferenceTable {
    pub roles: Vec<String>,
    pub languages: Vec<String>,
    /// `relevance[role][language]`.
    pub relevance: Vec<Vec<f64>>,
}

impl Default for RoleReferenceTable {
    fn default() -> Self {
        let languages: Vec<String> = DEFAULT_LANGUAGES.iter().map(|s| s.to_string()).collect();
        let relevance = DEFAULT_WEIGHTS
            .iter()
            .map(|(_, weights)| {
                let mut row = vec![0.0; languages.len()];
                for (lang, w) in weights.iter() {
                    let j = languages.iter().position(|l| l == lang).expect("known language");
                    row[j] = *w;
                }
                row
            })
            .collect();
        Self {
            roles: DEFAULT_WEIGHTS.iter().map(|(r, _)| r.to_string()).collect(),
            languages,
            relevance,
        }
    }
}

impl RoleReferenceTable {
    pub fn new(roles: Vec<String>, languages: Vec<String>, relevance: Vec<Vec<f64>>) -> Result<Self> {
        let table = Self {
            roles,
            languages,
            relevance,
        };
        table.check_shape()?;
        Ok(table)
    }

    fn check_shape(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(format!("reference table: {m}")));
        if self.roles.is_empty() {
            return bad("no roles".into());
        }
        if self.relevance.len() != self.roles.len() {
            return bad("row count does not match roles".into());
        }
        for (role, row) in self.roles.iter().zip(&self.relevance) {
            if row.len() != self.languages.len() {
                return bad(format!("row {role:?} has {} values, expected {}", row.len(), self.languages.len()));
            }
            if let Some(v) = row.iter().find(|v| !(0.0..=1.0).contains(*v)) {
                return bad(format!("row {role:?} has value {v} outside [0, 1]"));
            }
            if row.iter().all(|&v| v == 0.0) {
                return bad(format!("role {role:?} has no relevant language"));
            }
        }
        Ok(())
    }

    /// Checks that every table language is one of `languages`.
    pub fn validate_against(&self, languages: &[String]) -> Result<()> {
        match self.languages.iter().find(|l| !languages.contains(l)) {
            Some(l) => Err(Error::Config(format!(
                "reference table language {l:?} is not in the language list"
            ))),
            None => Ok(()),
        }
    }

    pub fn role_index(&self, role: &str) -> Option<usize> {
        self.roles.iter().position(|r| r == role)
    }

    /// Relevance row of `role` re-indexed onto `languages` (missing ones are 0).
    pub fn row_on(&self, role: usize, languages: &[String]) -> Vec<f64> {
        languages
            .iter()
            .map(|l| {
                self.languages
                    .iter()
                    .position(|x| x == l)
                    .map_or(0.0, |j| self.relevance[role][j])
            })
            .collect()
    }

    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let headers = reader.headers()?.clone();
        let languages: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
        let mut roles = Vec::new();
        let mut relevance = Vec::new();
        for record in reader.records() {
            let record = record?;
            let role = record.get(0).unwrap_or_default().to_string();
            let row = record
                .iter()
                .skip(1)
                .map(|v| {
                    v.parse::<f64>()
                        .map_err(|_| Error::Config(format!("reference table: bad value {v:?} for role {role:?}")))
                })
                .collect::<Result<Vec<f64>>>()?;
            roles.push(role);
            relevance.push(row);
        }
        Self::new(roles, languages, relevance)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_csv_str(&text).map_err(|e| match e {
            Error::Csv(e) => Error::Config(format!("{}: {e}", path.display())),
            other => other,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["role".to_string()];
        header.extend(self.languages.iter().cloned());
        w.write_record(&header).expect("in-memory write");
        for (role, row) in self.roles.iter().zip(&self.relevance) {
            let mut rec = vec![role.clone()];
            rec.extend(row.iter().map(|v| v.to_string()));
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }
}
