use crate::error::{Error, Result};

/// Kumar–Hassebrook similarity `x·y / (|x|² + |y|² − x·y)`.
///
/// Zero when either vector is all zeros. For non-negative inputs the value
/// lies in `[0, 1]` and is 1 only for identical vectors. Not scale
/// invariant: `sim(c·x, y) != sim(x, y)` in general.
pub fn kh_similarity(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let mut dot = 0.0;
    let mut xx = 0.0;
    let mut yy = 0.0;
    for (a, b) in x.iter().zip(y) {
        dot += a * b;
        xx += a * a;
        yy += b * b;
    }
    if xx == 0.0 || yy == 0.0 {
        return Ok(0.0);
    }
    Ok(dot / (xx + yy - dot))
}
