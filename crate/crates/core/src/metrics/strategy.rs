use std::collections::BTreeSet;
use std::fmt;

use chrono::{Days, Months, NaiveDate, NaiveTime};
use serde::{Deserialize, Serialize};

use super::matrix::OwnershipMatrix;
use crate::miner::{ProjectManifest, TouchEvent};

/// Collaboration strategy of a project.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StrategyLabel {
    /// Every developer works on at most one microservice.
    OneMsPerDeveloper,
    /// Exactly one developer touched every microservice.
    OneDevAllMs,
    /// Two or more developers touched every microservice.
    MultiDevAllMs,
    /// Nobody touched every microservice.
    MultiDevSomeMs,
}

impl StrategyLabel {
    pub const ALL: [StrategyLabel; 4] = [
        StrategyLabel::OneMsPerDeveloper,
        StrategyLabel::OneDevAllMs,
        StrategyLabel::MultiDevAllMs,
        StrategyLabel::MultiDevSomeMs,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StrategyLabel::OneMsPerDeveloper => "ONE_MS_PER_DEVELOPER",
            StrategyLabel::OneDevAllMs => "ONE_DEV_ALL_MS",
            StrategyLabel::MultiDevAllMs => "MULTI_DEV_ALL_MS",
            StrategyLabel::MultiDevSomeMs => "MULTI_DEV_SOME_MS",
        }
    }

    /// Human-readable name used in reports.
    pub fn display_name(self) -> &'static str {
        match self {
            StrategyLabel::OneMsPerDeveloper => "One-MS-per-developer",
            StrategyLabel::OneDevAllMs => "One-Dev-ALL-MS",
            StrategyLabel::MultiDevAllMs => "Multi-Dev-ALL-MS",
            StrategyLabel::MultiDevSomeMs => "Multi-Dev-SOME-MS",
        }
    }
}

impl fmt::Display for StrategyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Labels a project. Rules apply in order: one-microservice-per-developer,
/// then one full-coverage developer, then several, then none.
pub fn classify_strategy(matrix: &OwnershipMatrix) -> StrategyLabel {
    if (0..matrix.n_developers()).all(|d| matrix.distinct_count(d) <= 1) {
        return StrategyLabel::OneMsPerDeveloper;
    }
    match matrix.full_coverage().len() {
        1 => StrategyLabel::OneDevAllMs,
        0 => StrategyLabel::MultiDevSomeMs,
        _ => StrategyLabel::MultiDevAllMs,
    }
}

/// UTC timestamp bounds `[start, end)` of the 12 months ending on `as_of`
/// (inclusive of the whole `as_of` day).
pub fn activity_window(as_of: NaiveDate) -> (i64, i64) {
    let end = as_of + Days::new(1);
    let start = as_of
        .checked_sub_months(Months::new(12))
        .expect("date in range")
        + Days::new(1);
    let ts = |d: NaiveDate| d.and_time(NaiveTime::MIN).and_utc().timestamp();
    (ts(start), ts(end))
}

/// Inclusion criteria: at least two microservices, and at least two of them
/// touched in the 12 months before `as_of`.
pub fn select_project(manifest: &ProjectManifest, touches: &[TouchEvent]) -> bool {
    if manifest.microservice_paths.len() < 2 {
        return false;
    }
    let (start, end) = activity_window(manifest.as_of);
    let active: BTreeSet<&str> = touches
        .iter()
        .filter(|t| t.timestamp >= start && t.timestamp < end)
        .map(|t| t.microservice.as_str())
        .collect();
    active.len() >= 2
}
