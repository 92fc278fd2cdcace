use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::miner::{FileKind, TouchEvent};

/// How multi-microservice commits enter the per-developer touch sequences.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceMode {
    /// Every touch, simultaneous touches ordered by microservice name.
    #[default]
    AllTouches,
    /// Commits touching more than one microservice are left out of sequences.
    DropMultiService,
}

/// Developer × microservice counts of source-code touch events.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OwnershipMatrix {
    /// Canonical author keys, sorted.
    pub developers: Vec<String>,
    /// Microservice names, sorted.
    pub microservices: Vec<String>,
    /// `counts[d][m]`, number of source touches.
    pub counts: Vec<Vec<u64>>,
    /// Chronological microservice touch sequence of each developer.
    pub sequences: Vec<Vec<String>>,
}

impl OwnershipMatrix {
    /// Builds the matrix from source touches. Columns are `microservices`
    /// (the project's full list) plus any name seen in the events.
    pub fn from_touches(microservices: &[String], touches: &[TouchEvent], mode: SequenceMode) -> Self {
        let mut services: BTreeSet<String> = microservices.iter().cloned().collect();
        let mut per_dev: BTreeMap<&str, Vec<&TouchEvent>> = BTreeMap::new();
        for t in touches.iter().filter(|t| t.file_kind == FileKind::Source) {
            services.insert(t.microservice.clone());
            per_dev.entry(&t.author_id.canonical_key).or_default().push(t);
        }
        let microservices: Vec<String> = services.into_iter().collect();
        let col = |name: &str| microservices.binary_search_by(|m| m.as_str().cmp(name)).unwrap();

        let mut developers = Vec::with_capacity(per_dev.len());
        let mut counts = Vec::with_capacity(per_dev.len());
        let mut sequences = Vec::with_capacity(per_dev.len());
        for (dev, mut events) in per_dev {
            events.sort_by(|a, b| {
                (a.timestamp, &a.sha, &a.microservice).cmp(&(b.timestamp, &b.sha, &b.microservice))
            });
            let mut row = vec![0u64; microservices.len()];
            for e in &events {
                row[col(&e.microservice)] += 1;
            }
            let mut per_commit: BTreeMap<&str, usize> = BTreeMap::new();
            for e in &events {
                *per_commit.entry(e.sha.as_str()).or_default() += 1;
            }
            let seq = events
                .iter()
                .filter(|e| mode == SequenceMode::AllTouches || per_commit[e.sha.as_str()] == 1)
                .map(|e| e.microservice.clone())
                .collect();
            developers.push(dev.to_string());
            counts.push(row);
            sequences.push(seq);
        }
        Self {
            developers,
            microservices,
            counts,
            sequences,
        }
    }

    /// Builds a matrix straight from counts, with empty sequences.
    pub fn from_counts(developers: Vec<String>, microservices: Vec<String>, counts: Vec<Vec<u64>>) -> Self {
        assert_eq!(developers.len(), counts.len());
        assert!(counts.iter().all(|r| r.len() == microservices.len()));
        let sequences = vec![Vec::new(); developers.len()];
        Self {
            developers,
            microservices,
            counts,
            sequences,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.developers.is_empty()
    }

    pub fn n_developers(&self) -> usize {
        self.developers.len()
    }

    pub fn n_microservices(&self) -> usize {
        self.microservices.len()
    }

    /// Number of microservices developer `d` touched.
    pub fn distinct_count(&self, d: usize) -> usize {
        self.counts[d].iter().filter(|&&c| c > 0).count()
    }

    pub fn row_total(&self, d: usize) -> u64 {
        self.counts[d].iter().sum()
    }

    /// Microservices with at least one source touch.
    pub fn active_microservices(&self) -> usize {
        (0..self.n_microservices())
            .filter(|&m| self.counts.iter().any(|r| r[m] > 0))
            .count()
    }

    /// Developers who touched every microservice.
    pub fn full_coverage(&self) -> Vec<usize> {
        if self.microservices.is_empty() {
            return Vec::new();
        }
        (0..self.n_developers())
            .filter(|&d| self.counts[d].iter().all(|&c| c > 0))
            .collect()
    }
}
