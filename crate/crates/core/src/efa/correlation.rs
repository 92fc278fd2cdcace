use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// Pearson correlation matrix of the columns of `data` (rows are observations).
///
/// Columns must have non-zero variance. The diagonal is exactly 1 and the
/// result is exactly symmetric.
pub fn correlation_matrix(data: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let (n, p) = data.shape();
    if n < 2 {
        return Err(Error::Analysis(format!(
            "correlation needs at least 2 observations, got {n}"
        )));
    }
    let means: Vec<f64> = data.column_iter().map(|c| c.sum() / n as f64).collect();
    let centered = DMatrix::from_fn(n, p, |i, j| data[(i, j)] - means[j]);
    let scale: Vec<f64> = centered.column_iter().map(|c| c.norm()).collect();
    if let Some(j) = scale.iter().position(|&s| s == 0.0) {
        return Err(Error::Analysis(format!("column {j} has zero variance")));
    }
    let cov = centered.transpose() * &centered;
    let mut r = DMatrix::from_fn(p, p, |i, j| cov[(i, j)] / (scale[i] * scale[j]));
    for i in 0..p {
        r[(i, i)] = 1.0;
        for j in 0..i {
            let v = (0.5 * (r[(i, j)] + r[(j, i)])).clamp(-1.0, 1.0);
            r[(i, j)] = v;
            r[(j, i)] = v;
        }
    }
    Ok(r)
}

/// Eigen-decomposition of a symmetric matrix, eigenvalues in descending
/// order with matching eigenvector columns.
pub fn symmetric_eigen_desc(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]).then(a.cmp(&b)));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(m.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Descending eigenvalues only.
pub fn eigenvalues_desc(m: &DMatrix<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}
