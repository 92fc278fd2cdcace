use serde::{Deserialize, Serialize};

use super::matrix::OwnershipMatrix;
use super::stats::FiveNumberSummary;
use crate::error::{Error, Result};

/// Distinct microservices per developer, with their boxplot summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MsPerDeveloper {
    pub counts: Vec<usize>,
    pub summary: FiveNumberSummary,
}

pub fn ms_per_developer(matrix: &OwnershipMatrix) -> Result<MsPerDeveloper> {
    if matrix.is_empty() {
        return Err(Error::Analysis("ownership matrix has no developers".into()));
    }
    let counts: Vec<usize> = (0..matrix.n_developers()).map(|d| matrix.distinct_count(d)).collect();
    let summary = FiveNumberSummary::from_values(counts.iter().map(|&c| c as f64))
        .expect("non-empty matrix");
    Ok(MsPerDeveloper { counts, summary })
}

/// Microservices with and without a developer shared with another microservice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharedCounts {
    pub shared: usize,
    pub not_shared: usize,
}

/// A microservice is shared when one of its developers also touched some
/// other microservice. Untouched microservices are in neither count.
pub fn shared_ms_counts(matrix: &OwnershipMatrix) -> SharedCounts {
    let mut shared = 0;
    let mut not_shared = 0;
    for m in 0..matrix.n_microservices() {
        let devs: Vec<usize> = (0..matrix.n_developers())
            .filter(|&d| matrix.counts[d][m] > 0)
            .collect();
        if devs.is_empty() {
            continue;
        }
        if devs.iter().any(|&d| matrix.distinct_count(d) > 1) {
            shared += 1;
        } else {
            not_shared += 1;
        }
    }
    SharedCounts { shared, not_shared }
}

/// Number of times a developer returns to a microservice they had already
/// worked on after moving to a different one.
///
/// Consecutive touches of the same microservice collapse into one visit.
pub fn commit_back_count<S: AsRef<str>>(sequence: &[S]) -> usize {
    let mut visited: Vec<&str> = Vec::new();
    let mut last: Option<&str> = None;
    let mut backs = 0;
    for ms in sequence.iter().map(AsRef::as_ref) {
        if last == Some(ms) {
            continue;
        }
        if visited.contains(&ms) {
            backs += 1;
        } else {
            visited.push(ms);
        }
        last = Some(ms);
    }
    backs
}
