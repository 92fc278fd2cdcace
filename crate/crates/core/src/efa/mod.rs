//! Exploratory factor analysis over contributor language profiles.

pub mod adequacy;
pub mod correlation;
pub mod data;
pub mod extraction;
pub mod parallel;
pub mod varimax;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

pub use adequacy::{bartlett_test, kmo_test, Bartlett, Kmo};
pub use correlation::{correlation_matrix, eigenvalues_desc, symmetric_eigen_desc};
pub use data::{build_language_matrix, DeveloperLanguageMatrix, Normalization};
pub use extraction::{extract_factors, Extraction, ExtractionMethod};
pub use parallel::{parallel_analysis, ParallelAnalysis};
pub use varimax::{varimax_criterion, varimax_rotate, Varimax};

use crate::error::{Error, Result};

/// Loadings above this are treated as stable.
pub const STABLE_THRESHOLD: f64 = 0.4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EfaOptions {
    pub seed: u64,
    pub n_sims: usize,
    /// Overrides the parallel-analysis factor count.
    pub factors: Option<usize>,
    /// Varimax convergence tolerance.
    pub tol: f64,
    pub max_iter: usize,
    pub extraction: ExtractionMethod,
    pub normalization: Normalization,
    pub stable_threshold: f64,
}

impl EfaOptions {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            n_sims: 100,
            factors: None,
            tol: varimax::DEFAULT_TOL,
            max_iter: varimax::DEFAULT_MAX_ITER,
            extraction: ExtractionMethod::PrincipalAxis,
            normalization: Normalization::default(),
            stable_threshold: STABLE_THRESHOLD,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EfaDiagnostics {
    pub n_contributors: usize,
    pub analyzed_languages: Vec<String>,
    /// Zero-variance languages left out of the correlation matrix.
    pub excluded_languages: Vec<String>,
    pub kmo: f64,
    pub kmo_per_language: Vec<f64>,
    pub bartlett_chi2: f64,
    pub bartlett_df: usize,
    pub bartlett_p: f64,
    pub observed_eigenvalues: Vec<f64>,
    pub simulated_eigenvalues: Vec<f64>,
    pub retained_factors: usize,
    /// Factors actually extracted (override or retained, at least 1).
    pub extracted_factors: usize,
    pub n_sims: usize,
    pub seed: u64,
    pub extraction_converged: bool,
    pub extraction_iterations: usize,
    pub heywood_languages: Vec<String>,
    pub rotation_converged: bool,
    pub rotation_iterations: usize,
}

/// Rotated factor solution.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorModel {
    pub languages: Vec<String>,
    /// Varimax-rotated loadings, languages × factors.
    pub loadings: DMatrix<f64>,
    pub communalities: Vec<f64>,
    pub stable_threshold: f64,
}

impl FactorModel {
    pub fn n_factors(&self) -> usize {
        self.loadings.ncols()
    }

    pub fn factor_names(&self) -> Vec<String> {
        (1..=self.n_factors()).map(|i| format!("F{i}")).collect()
    }

    /// Languages loading above the stable threshold on `factor`, strongest first.
    pub fn stable_languages(&self, factor: usize) -> Vec<(&str, f64)> {
        let mut out: Vec<(&str, f64)> = self
            .languages
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), self.loadings[(i, factor)]))
            .filter(|(_, v)| *v > self.stable_threshold)
            .collect();
        out.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(b.0)));
        out
    }

    /// Loadings table as CSV: one row per language, one column per factor,
    /// six decimals.
    pub fn loadings_csv(&self) -> String {
        let mut out = String::from("language");
        for name in self.factor_names() {
            out.push(',');
            out.push_str(&name);
        }
        out.push('\n');
        for (i, lang) in self.languages.iter().enumerate() {
            out.push_str(&csv_field(lang));
            for j in 0..self.n_factors() {
                // avoid "-0.000000"
                let v = self.loadings[(i, j)];
                let v = if v.abs() < 5e-7 { 0.0 } else { v };
                out.push_str(&format!(",{v:.6}"));
            }
            out.push('\n');
        }
        out
    }
}

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EfaResult {
    pub diagnostics: EfaDiagnostics,
    pub model: FactorModel,
}

/// Full analysis: verification, factor count, extraction and rotation.
pub fn run_efa(data: &DeveloperLanguageMatrix, options: &EfaOptions) -> Result<EfaResult> {
    let keep = data.varying_columns();
    if keep.len() < 2 {
        return Err(Error::Analysis(format!(
            "factor analysis needs at least 2 varying languages, found {}",
            keep.len()
        )));
    }
    let n = data.n_contributors();
    let sub = DMatrix::from_fn(n, keep.len(), |i, j| data.values[(i, keep[j])]);
    let languages: Vec<String> = keep.iter().map(|&j| data.languages[j].clone()).collect();

    let r = correlation_matrix(&sub)?;
    let bartlett = bartlett_test(&r, n)?;
    let kmo = kmo_test(&r)?;
    let pa = parallel::parallel_analysis_with_observed(eigenvalues_desc(&r), n, options.n_sims, options.seed)?;

    let p = languages.len();
    let wanted = options.factors.unwrap_or(pa.retained_factors);
    if wanted >= p {
        return Err(Error::Analysis(format!(
            "cannot extract {wanted} factors from {p} languages"
        )));
    }
    let k = wanted.max(1);
    if wanted == 0 {
        log::warn!("parallel analysis retained no factors; extracting one");
    }
    let extraction = match options.extraction {
        ExtractionMethod::PrincipalAxis => extract_factors(&r, k)?,
    };
    let rotated = varimax_rotate(&extraction.loadings, options.tol, options.max_iter);
    let communalities = rotated.loadings.row_iter().map(|row| row.norm_squared()).collect();

    let diagnostics = EfaDiagnostics {
        n_contributors: n,
        analyzed_languages: languages.clone(),
        excluded_languages: data.zero_variance_languages(),
        kmo: kmo.overall,
        kmo_per_language: kmo.per_variable,
        bartlett_chi2: bartlett.chi2,
        bartlett_df: bartlett.df,
        bartlett_p: bartlett.p_value,
        observed_eigenvalues: pa.observed_eigenvalues,
        simulated_eigenvalues: pa.simulated_eigenvalues,
        retained_factors: pa.retained_factors,
        extracted_factors: k,
        n_sims: pa.n_sims,
        seed: pa.seed,
        extraction_converged: extraction.converged,
        extraction_iterations: extraction.iterations,
        heywood_languages: extraction.heywood.iter().map(|&i| languages[i].clone()).collect(),
        rotation_converged: rotated.converged,
        rotation_iterations: rotated.iterations,
    };
    Ok(EfaResult {
        diagnostics,
        model: FactorModel {
            languages,
            loadings: rotated.loadings,
            communalities,
            stable_threshold: options.stable_threshold,
        },
    })
}
