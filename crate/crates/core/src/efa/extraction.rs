//! Principal-axis factoring with iterated communalities.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::adequacy::inverse;
use super::correlation::symmetric_eigen_desc;
use crate::error::{Error, Result};

/// Factor extraction method.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtractionMethod {
    #[default]
    PrincipalAxis,
}

impl std::str::FromStr for ExtractionMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "principal-axis" | "pa" => Ok(ExtractionMethod::PrincipalAxis),
            other => Err(format!("unknown extraction method {other:?} (principal-axis)")),
        }
    }
}

pub const DEFAULT_MAX_ITER: usize = 200;
pub const DEFAULT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct Extraction {
    /// Unrotated loadings, variables × factors.
    pub loadings: DMatrix<f64>,
    pub communalities: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// Variables whose communality exceeded 1 and was clipped.
    pub heywood: Vec<usize>,
    /// Singular `r`: initial communalities are the largest absolute correlations.
    pub smc_fallback: bool,
}

/// Squared multiple correlations `1 - 1 / (R^-1)_ii`.
pub fn squared_multiple_correlations(r: &DMatrix<f64>) -> Result<Vec<f64>> {
    let inv = inverse(r)?;
    Ok((0..r.nrows()).map(|i| (1.0 - 1.0 / inv[(i, i)]).clamp(0.0, 1.0)).collect())
}

fn max_abs_correlation(r: &DMatrix<f64>) -> Vec<f64> {
    let p = r.nrows();
    (0..p)
        .map(|i| {
            (0..p)
                .filter(|&j| j != i)
                .map(|j| r[(i, j)].abs())
                .fold(0.0, f64::max)
        })
        .collect()
}

/// Flips factor columns so each one's largest-magnitude entry is positive.
pub fn apply_sign_convention(loadings: &mut DMatrix<f64>) -> Vec<bool> {
    let mut flipped = Vec::with_capacity(loadings.ncols());
    for mut col in loadings.column_iter_mut() {
        let pivot = col.iter().copied().fold(0.0f64, |acc, x| if x.abs() > acc.abs() { x } else { acc });
        let flip = pivot < 0.0;
        if flip {
            col.neg_mut();
        }
        flipped.push(flip);
    }
    flipped
}

/// Extracts `k` factors from correlation matrix `r`.
///
/// Communalities start at the squared multiple correlations and are
/// re-estimated from the top-`k` eigenpairs of the reduced correlation
/// matrix until no communality moves more than `tol`, or `max_iter` passes.
pub fn extract_factors(r: &DMatrix<f64>, k: usize) -> Result<Extraction> {
    extract_factors_with(r, k, DEFAULT_TOL, DEFAULT_MAX_ITER)
}

pub fn extract_factors_with(r: &DMatrix<f64>, k: usize, tol: f64, max_iter: usize) -> Result<Extraction> {
    let p = r.nrows();
    if k == 0 || k >= p {
        return Err(Error::Analysis(format!(
            "cannot extract {k} factors from {p} variables (need 1 <= k < p)"
        )));
    }
    let (mut h, smc_fallback) = match squared_multiple_correlations(r) {
        Ok(h) => (h, false),
        Err(_) => (max_abs_correlation(r), true),
    };
    let mut heywood = vec![false; p];
    let mut loadings = DMatrix::zeros(p, k);
    let mut converged = false;
    let mut iterations = 0;
    while iterations < max_iter {
        iterations += 1;
        let mut reduced = r.clone();
        for (i, hi) in h.iter().enumerate() {
            reduced[(i, i)] = *hi;
        }
        let (values, vectors) = symmetric_eigen_desc(&reduced);
        for f in 0..k {
            let scale = values[f].max(0.0).sqrt();
            for i in 0..p {
                loadings[(i, f)] = vectors[(i, f)] * scale;
            }
        }
        let mut next: Vec<f64> = loadings.row_iter().map(|row| row.norm_squared()).collect();
        for (i, v) in next.iter_mut().enumerate() {
            if *v > 1.0 {
                *v = 1.0;
                heywood[i] = true;
            }
        }
        let delta = next
            .iter()
            .zip(&h)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        h = next;
        if delta < tol {
            converged = true;
            break;
        }
    }
    if !converged {
        log::warn!("principal-axis extraction did not converge in {max_iter} iterations");
    }
    for (i, flag) in heywood.iter_mut().enumerate() {
        let norm = loadings.row(i).norm();
        if norm > 1.0 {
            loadings.row_mut(i).unscale_mut(norm);
            *flag = true;
        }
    }
    apply_sign_convention(&mut loadings);
    let communalities = loadings.row_iter().map(|row| row.norm_squared()).collect();
    Ok(Extraction {
        loadings,
        communalities,
        iterations,
        converged,
        heywood: (0..p).filter(|&i| heywood[i]).collect(),
        smc_fallback,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Model-implied correlation `L L^T` with unit diagonal.
    fn implied(l: &DMatrix<f64>) -> DMatrix<f64> {
        let mut r = l * l.transpose();
        for i in 0..r.nrows() {
            r[(i, i)] = 1.0;
        }
        r
    }

    #[test]
    fn identity_has_no_common_variance() {
        let e = extract_factors(&DMatrix::identity(4, 4), 1).unwrap();
        assert!(e.loadings.iter().all(|x| x.abs() < 1e-12));
        assert!(e.converged);
    }

    #[test]
    fn recovers_one_factor_model() {
        let l = DMatrix::from_column_slice(5, 1, &[0.8, 0.7, 0.6, 0.75, 0.5]);
        let e = extract_factors_with(&implied(&l), 1, 1e-10, 5000).unwrap();
        assert!(e.converged);
        for i in 0..5 {
            assert!((e.loadings[(i, 0)] - l[(i, 0)]).abs() < 1e-3, "row {i}");
        }
    }

    #[test]
    fn equicorrelation_gives_equal_loadings() {
        let p = 4;
        let rho = 0.6;
        let r = DMatrix::from_fn(p, p, |i, j| if i == j { 1.0 } else { rho });
        let e = extract_factors(&r, 1).unwrap();
        let first = e.loadings[(0, 0)];
        assert!(first > 0.0);
        for i in 1..p {
            assert!((e.loadings[(i, 0)] - first).abs() < 1e-9);
        }
        // fixed point of the iteration is sqrt(rho)
        assert!((first - rho.sqrt()).abs() < 1e-3);
    }

    #[test]
    fn rejects_bad_k() {
        let r = DMatrix::identity(3, 3);
        assert!(extract_factors(&r, 0).is_err());
        assert!(extract_factors(&r, 3).is_err());
    }

    #[test]
    fn heywood_cases_are_clipped() {
        // loading > 1 implied by r_12 r_13 / r_23
        let r = DMatrix::from_row_slice(3, 3, &[1.0, 0.9, 0.9, 0.9, 1.0, 0.6, 0.9, 0.6, 1.0]);
        let e = extract_factors(&r, 1).unwrap();
        assert!(!e.heywood.is_empty());
        assert!(e.communalities.iter().all(|&h| h <= 1.0 + 1e-9));
    }

    #[test]
    fn singular_input_uses_fallback_start() {
        let r = DMatrix::from_row_slice(3, 3, &[1.0, 1.0, 0.3, 1.0, 1.0, 0.3, 0.3, 0.3, 1.0]);
        let e = extract_factors(&r, 1).unwrap();
        assert!(e.smc_fallback);
    }
}
