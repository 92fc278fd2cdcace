use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::languages::LanguageMap;

/// How raw per-language file counts are scaled into `[0, 1]`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    /// Each contributor's counts divided by their total (rows sum to 1).
    ///
    /// Rows summing to a constant make the correlation matrix singular when
    /// every language column is kept, so Bartlett, KMO and principal-axis
    /// extraction reject it unless a column is pruned.
    Proportion,
    /// Each language column rescaled to `(x - min) / (max - min)` over
    /// contributors.
    #[default]
    Minmax,
}

impl std::str::FromStr for Normalization {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "proportion" => Ok(Normalization::Proportion),
            "minmax" => Ok(Normalization::Minmax),
            other => Err(format!("unknown normalization {other:?} (proportion, minmax)")),
        }
    }
}

/// Contributor × language contribution matrix with values in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeveloperLanguageMatrix {
    pub contributors: Vec<String>,
    pub languages: Vec<String>,
    pub values: DMatrix<f64>,
    pub normalization: Normalization,
    /// Contributors with no counted files.
    pub dropped_contributors: Vec<String>,
}

/// Counts each contributor's changed files per language bucket and
/// normalizes them. Files with unmapped extensions count toward `Others`.
pub fn build_language_matrix(
    files_by_contributor: &BTreeMap<String, Vec<String>>,
    languages: &LanguageMap,
    normalization: Normalization,
) -> DeveloperLanguageMatrix {
    let p = languages.languages().len();
    let mut contributors = Vec::new();
    let mut dropped = Vec::new();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (who, files) in files_by_contributor {
        if files.is_empty() {
            log::warn!("contributor {who} has no changed files; dropped from the language matrix");
            dropped.push(who.clone());
            continue;
        }
        let mut row = vec![0.0; p];
        for f in files {
            row[languages.bucket(f)] += 1.0;
        }
        contributors.push(who.clone());
        rows.push(row);
    }
    let n = rows.len();
    let mut values = DMatrix::from_fn(n, p, |i, j| rows[i][j]);
    match normalization {
        Normalization::Proportion => {
            for mut row in values.row_iter_mut() {
                let total: f64 = row.sum();
                row /= total;
            }
        }
        Normalization::Minmax => {
            for mut col in values.column_iter_mut() {
                let (lo, hi) = (col.min(), col.max());
                let range = hi - lo;
                if range > 0.0 {
                    col.apply(|x| *x = (*x - lo) / range);
                } else {
                    col.fill(0.0);
                }
            }
        }
    }
    DeveloperLanguageMatrix {
        contributors,
        languages: languages.languages().to_vec(),
        values,
        normalization,
        dropped_contributors: dropped,
    }
}

impl DeveloperLanguageMatrix {
    pub fn n_contributors(&self) -> usize {
        self.values.nrows()
    }

    /// Indices of columns with non-zero variance.
    pub fn varying_columns(&self) -> Vec<usize> {
        (0..self.values.ncols())
            .filter(|&j| {
                let col = self.values.column(j);
                col.iter().any(|&x| x != col[0])
            })
            .collect()
    }

    /// Constant languages, left out of the correlation matrix.
    pub fn zero_variance_languages(&self) -> Vec<String> {
        let keep = self.varying_columns();
        (0..self.languages.len())
            .filter(|j| !keep.contains(j))
            .map(|j| self.languages[j].clone())
            .collect()
    }

    /// Row of one contributor, as a plain vector.
    pub fn row(&self, i: usize) -> Vec<f64> {
        self.values.row(i).iter().copied().collect()
    }

    pub fn index_of(&self, contributor: &str) -> Option<usize> {
        self.contributors.iter().position(|c| c == contributor)
    }
}
