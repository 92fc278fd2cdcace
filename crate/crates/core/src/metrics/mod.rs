//! Ownership statistics over attributed touches.

pub mod matrix;
pub mod ownership;
pub mod stats;
pub mod strategy;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use matrix::{OwnershipMatrix, SequenceMode};
pub use ownership::{commit_back_count, ms_per_developer, shared_ms_counts, MsPerDeveloper, SharedCounts};
pub use stats::{quantile, FiveNumberSummary};
pub use strategy::{activity_window, classify_strategy, select_project, StrategyLabel};

use crate::miner::{ProjectManifest, TouchEvent};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeveloperMetrics {
    pub key: String,
    pub display_name: String,
    pub distinct_ms: usize,
    pub commit_back: usize,
    pub touch_total: u64,
}

/// Everything reported for one project.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectMetrics {
    pub project: String,
    pub selected: bool,
    pub strategy: StrategyLabel,
    pub n_microservices: usize,
    pub active_microservices: usize,
    pub n_developers: usize,
    pub shared: SharedCounts,
    /// True when no microservice has a developer shared with another one.
    pub no_shared_developers: bool,
    pub full_coverage_developers: Vec<String>,
    pub developers: Vec<DeveloperMetrics>,
    pub ms_per_developer: Option<FiveNumberSummary>,
    pub commit_back: Option<FiveNumberSummary>,
}

impl ProjectMetrics {
    pub fn compute(manifest: &ProjectManifest, touches: &[TouchEvent], mode: SequenceMode) -> Self {
        let matrix = OwnershipMatrix::from_touches(&manifest.microservice_paths, touches, mode);
        Self::from_matrix(manifest, touches, &matrix)
    }

    pub fn from_matrix(manifest: &ProjectManifest, touches: &[TouchEvent], matrix: &OwnershipMatrix) -> Self {
        let mut names: BTreeMap<&str, &str> = BTreeMap::new();
        for t in touches {
            names
                .entry(&t.author_id.canonical_key)
                .or_insert(&t.author_id.display_name);
        }
        let developers: Vec<DeveloperMetrics> = matrix
            .developers
            .iter()
            .enumerate()
            .map(|(d, key)| DeveloperMetrics {
                key: key.clone(),
                display_name: names.get(key.as_str()).copied().unwrap_or(key).to_string(),
                distinct_ms: matrix.distinct_count(d),
                commit_back: commit_back_count(&matrix.sequences[d]),
                touch_total: matrix.row_total(d),
            })
            .collect();
        let shared = shared_ms_counts(matrix);
        Self {
            project: manifest.name.clone(),
            selected: select_project(manifest, touches),
            strategy: classify_strategy(matrix),
            n_microservices: matrix.n_microservices(),
            active_microservices: matrix.active_microservices(),
            n_developers: matrix.n_developers(),
            shared,
            no_shared_developers: shared.shared == 0,
            full_coverage_developers: matrix
                .full_coverage()
                .into_iter()
                .map(|d| matrix.developers[d].clone())
                .collect(),
            ms_per_developer: ms_per_developer(matrix).ok().map(|r| r.summary),
            commit_back: FiveNumberSummary::from_values(developers.iter().map(|d| d.commit_back as f64)),
            developers,
        }
    }
}
