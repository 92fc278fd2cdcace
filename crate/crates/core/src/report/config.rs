use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::efa::{EfaOptions, ExtractionMethod, Normalization};
use crate::error::{Error, Result};
use crate::metrics::SequenceMode;
use crate::roles::ProfileBasis;

/// Pipeline stage selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Mine,
    Metrics,
    Efa,
    Roles,
    Report,
    All,
}

impl Command {
    pub fn needs_metrics(self) -> bool {
        !matches!(self, Command::Mine)
    }

    pub fn needs_efa(self) -> bool {
        matches!(self, Command::Efa | Command::Roles | Command::All)
    }

    pub fn needs_roles(self) -> bool {
        matches!(self, Command::Roles | Command::All)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
    Svg,
    Markdown,
}

impl ReportFormat {
    pub const ALL: [ReportFormat; 4] = [ReportFormat::Json, ReportFormat::Csv, ReportFormat::Svg, ReportFormat::Markdown];

    /// Format of an output file, by extension.
    pub fn of_file(name: &str) -> Option<Self> {
        match Path::new(name).extension()?.to_str()? {
            "json" => Some(ReportFormat::Json),
            "csv" => Some(ReportFormat::Csv),
            "svg" => Some(ReportFormat::Svg),
            "md" => Some(ReportFormat::Markdown),
            _ => None,
        }
    }
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "svg" => Ok(ReportFormat::Svg),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            other => Err(format!("unknown report format {other:?} (json, csv, svg, markdown)")),
        }
    }
}

/// Factor-analysis flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EfaFlags {
    pub n_sims: usize,
    pub factors: Option<usize>,
    pub tol: f64,
    pub extraction: ExtractionMethod,
    pub normalization: Normalization,
}

impl Default for EfaFlags {
    fn default() -> Self {
        let d = EfaOptions::with_seed(0);
        Self {
            n_sims: d.n_sims,
            factors: None,
            tol: d.tol,
            extraction: d.extraction,
            normalization: d.normalization,
        }
    }
}

/// Everything a pipeline run depends on. Echoed into every report bundle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub manifests: Vec<PathBuf>,
    /// Directory whose `*.json` files are manifests.
    pub dataset_dir: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
    pub out_dir: PathBuf,
    pub seed: Option<u64>,
    /// Overrides every manifest's `as_of`.
    pub as_of: Option<NaiveDate>,
    pub alias_file: Option<PathBuf>,
    pub reference_table: Option<PathBuf>,
    pub exclude_bots: bool,
    pub sequence_mode: SequenceMode,
    pub profile_basis: ProfileBasis,
    pub efa: EfaFlags,
    pub formats: BTreeSet<ReportFormat>,
}

impl RunConfig {
    pub fn new(command: Command, out_dir: impl Into<PathBuf>) -> Self {
        Self {
            command,
            manifests: Vec::new(),
            dataset_dir: None,
            cache_dir: None,
            out_dir: out_dir.into(),
            seed: None,
            as_of: None,
            alias_file: None,
            reference_table: None,
            exclude_bots: false,
            sequence_mode: SequenceMode::default(),
            profile_basis: ProfileBasis::default(),
            efa: EfaFlags::default(),
            formats: ReportFormat::ALL.into_iter().collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.command.needs_efa() && self.seed.is_none() {
            return Err(Error::Config("--seed is required when factor analysis runs".into()));
        }
        if self.efa.n_sims == 0 {
            return Err(Error::Config("--sims must be at least 1".into()));
        }
        if self.efa.factors == Some(0) {
            return Err(Error::Config("--factors must be at least 1".into()));
        }
        if self.efa.tol.is_nan() || self.efa.tol <= 0.0 {
            return Err(Error::Config("--tol must be positive".into()));
        }
        Ok(())
    }

    pub fn efa_options(&self) -> EfaOptions {
        let mut o = EfaOptions::with_seed(self.seed.unwrap_or_default());
        o.n_sims = self.efa.n_sims;
        o.factors = self.efa.factors;
        o.tol = self.efa.tol;
        o.extraction = self.efa.extraction;
        o.normalization = self.efa.normalization;
        o
    }

    /// Manifest files: the explicit list, then the dataset directory's
    /// `*.json` files in name order.
    pub fn manifest_paths(&self) -> Result<Vec<PathBuf>> {
        let mut paths = self.manifests.clone();
        if let Some(dir) = &self.dataset_dir {
            let entries = fs::read_dir(dir).map_err(|e| Error::Config(format!("{}: {e}", dir.display())))?;
            let mut found: Vec<PathBuf> = entries
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
                .collect();
            found.sort();
            paths.extend(found);
        }
        Ok(paths)
    }
}
