//! Varimax rotation by successive planar rotations.

use nalgebra::DMatrix;

use super::extraction::apply_sign_convention;

pub const DEFAULT_TOL: f64 = 1e-6;
pub const DEFAULT_MAX_ITER: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct Varimax {
    /// Rotated loadings, variables × factors.
    pub loadings: DMatrix<f64>,
    /// Orthogonal `k × k` matrix with `rotated = unrotated * rotation`.
    pub rotation: DMatrix<f64>,
    /// Criterion of the Kaiser-normalized loadings: the starting value, then
    /// one entry per sweep.
    pub criterion_history: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Raw varimax criterion: the sum over factors of the variance of squared loadings.
pub fn varimax_criterion(loadings: &DMatrix<f64>) -> f64 {
    let p = loadings.nrows() as f64;
    loadings
        .column_iter()
        .map(|col| {
            let sq: Vec<f64> = col.iter().map(|x| x * x).collect();
            let mean = sq.iter().sum::<f64>() / p;
            sq.iter().map(|s| s * s).sum::<f64>() / p - mean * mean
        })
        .sum()
}

/// Angle of the best planar rotation of columns `a` and `b`.
fn pair_angle(m: &DMatrix<f64>, a: usize, b: usize) -> f64 {
    let p = m.nrows() as f64;
    let (mut sa, mut sb, mut sc, mut sd) = (0.0, 0.0, 0.0, 0.0);
    for i in 0..m.nrows() {
        let (x, y) = (m[(i, a)], m[(i, b)]);
        let u = x * x - y * y;
        let v = 2.0 * x * y;
        sa += u;
        sb += v;
        sc += u * u - v * v;
        sd += 2.0 * u * v;
    }
    let num = sd - 2.0 * sa * sb / p;
    let den = sc - (sa * sa - sb * sb) / p;
    num.atan2(den) / 4.0
}

fn rotate_pair(m: &mut DMatrix<f64>, a: usize, b: usize, phi: f64) {
    let (s, c) = phi.sin_cos();
    for i in 0..m.nrows() {
        let (x, y) = (m[(i, a)], m[(i, b)]);
        m[(i, a)] = c * x + s * y;
        m[(i, b)] = -s * x + c * y;
    }
}

/// Orthogonal varimax rotation with Kaiser row normalization.
///
/// Sweeps all factor pairs, rotating each pair to its optimal angle, until
/// a sweep improves the criterion by less than `tol` or `max_iter` sweeps
/// have run. Each factor's largest-magnitude loading is made positive.
pub fn varimax_rotate(loadings: &DMatrix<f64>, tol: f64, max_iter: usize) -> Varimax {
    let (p, k) = loadings.shape();
    let norms: Vec<f64> = loadings.row_iter().map(|r| r.norm()).collect();
    let mut work = loadings.clone();
    for (i, &h) in norms.iter().enumerate() {
        if h > 0.0 {
            work.row_mut(i).unscale_mut(h);
        }
    }
    let mut rotation = DMatrix::<f64>::identity(k, k);
    let mut history = vec![varimax_criterion(&work)];
    let mut iterations = 0;
    let mut converged = k < 2;
    while !converged && iterations < max_iter {
        iterations += 1;
        for a in 0..k {
            for b in a + 1..k {
                let phi = pair_angle(&work, a, b);
                if phi.abs() > 1e-15 {
                    rotate_pair(&mut work, a, b, phi);
                    rotate_pair(&mut rotation, a, b, phi);
                }
            }
        }
        let current = varimax_criterion(&work);
        let previous = *history.last().unwrap();
        history.push(current);
        if current - previous < tol {
            converged = true;
        }
    }
    for (i, &h) in norms.iter().enumerate() {
        if h > 0.0 {
            work.row_mut(i).scale_mut(h);
        }
    }
    debug_assert_eq!(work.nrows(), p);
    let flipped = apply_sign_convention(&mut work);
    for (j, flip) in flipped.into_iter().enumerate() {
        if flip {
            rotation.column_mut(j).neg_mut();
        }
    }
    Varimax {
        loadings: work,
        rotation,
        criterion_history: history,
        iterations,
        converged,
    }
}
