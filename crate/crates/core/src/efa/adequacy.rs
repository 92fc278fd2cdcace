//! Sampling adequacy checks run before factoring: Bartlett's test of
//! sphericity and the Kaiser–Meyer–Olkin measure.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bartlett {
    pub chi2: f64,
    pub df: usize,
    pub p_value: f64,
}

/// Log-determinant of a correlation matrix through its Cholesky factor.
pub fn ln_det(r: &DMatrix<f64>) -> Result<f64> {
    let chol = r
        .clone()
        .cholesky()
        .ok_or_else(|| Error::SingularCorrelation { det: r.determinant() })?;
    let l = chol.l_dirty();
    let ln = 2.0 * (0..r.nrows()).map(|i| l[(i, i)].ln()).sum::<f64>();
    if !ln.is_finite() {
        return Err(Error::SingularCorrelation { det: ln.exp() });
    }
    Ok(ln)
}

/// Inverse of a positive definite correlation matrix.
pub fn inverse(r: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let chol = r
        .clone()
        .cholesky()
        .ok_or_else(|| Error::SingularCorrelation { det: r.determinant() })?;
    let inv = chol.inverse();
    if inv.iter().any(|x| !x.is_finite()) {
        return Err(Error::SingularCorrelation { det: r.determinant() });
    }
    Ok(inv)
}

/// Bartlett's test that `r` is an identity matrix, for `n` observations.
///
/// `chi2 = -(n - 1 - (2p + 5) / 6) * ln det R`, `df = p (p - 1) / 2`.
pub fn bartlett_test(r: &DMatrix<f64>, n: usize) -> Result<Bartlett> {
    let p = r.nrows();
    if p < 2 {
        return Err(Error::Analysis("Bartlett's test needs at least 2 variables".into()));
    }
    if n <= p {
        return Err(Error::Analysis(format!(
            "Bartlett's test needs more observations ({n}) than variables ({p})"
        )));
    }
    let ln = ln_det(r)?;
    let factor = n as f64 - 1.0 - (2.0 * p as f64 + 5.0) / 6.0;
    // ln det is <= 0 for a correlation matrix; clamp rounding noise at identity
    let chi2 = (-factor * ln).max(0.0);
    let df = p * (p - 1) / 2;
    let dist = ChiSquared::new(df as f64).expect("positive degrees of freedom");
    Ok(Bartlett {
        chi2,
        df,
        p_value: dist.sf(chi2).clamp(0.0, 1.0),
    })
}

/// Anti-image partial correlations `q_ij = -a_ij / sqrt(a_ii a_jj)` with
/// `A = R^-1`.
pub fn partial_correlations(r: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let a = inverse(r)?;
    let p = r.nrows();
    Ok(DMatrix::from_fn(p, p, |i, j| {
        if i == j {
            1.0
        } else {
            -a[(i, j)] / (a[(i, i)] * a[(j, j)]).sqrt()
        }
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Kmo {
    pub overall: f64,
    /// Measure of sampling adequacy of each variable.
    pub per_variable: Vec<f64>,
}

/// Kaiser–Meyer–Olkin measure. Zero when all correlations vanish.
pub fn kmo_test(r: &DMatrix<f64>) -> Result<Kmo> {
    let q = partial_correlations(r)?;
    let p = r.nrows();
    let ratio = |r2: f64, q2: f64| if r2 + q2 > 0.0 { r2 / (r2 + q2) } else { 0.0 };
    let mut r2_total = 0.0;
    let mut q2_total = 0.0;
    let mut per_variable = Vec::with_capacity(p);
    for i in 0..p {
        let mut r2 = 0.0;
        let mut q2 = 0.0;
        for j in (0..p).filter(|&j| j != i) {
            r2 += r[(i, j)].powi(2);
            q2 += q[(i, j)].powi(2);
        }
        per_variable.push(ratio(r2, q2));
        r2_total += r2;
        q2_total += q2;
    }
    Ok(Kmo {
        overall: ratio(r2_total, q2_total),
        per_variable,
    })
}
