//! Horn's parallel analysis for choosing the number of factors.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::correlation::{correlation_matrix, eigenvalues_desc};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParallelAnalysis {
    pub observed_eigenvalues: Vec<f64>,
    /// Mean eigenvalues of the simulated uncorrelated data sets.
    pub simulated_eigenvalues: Vec<f64>,
    /// Leading positions where the observed eigenvalue beats the simulated mean.
    pub retained_factors: usize,
    pub n_sims: usize,
    pub seed: u64,
}

/// Random generator of simulation `index`. Each simulation owns a stream so
/// results do not depend on scheduling.
pub fn simulation_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn simulate_eigenvalues(n: usize, p: usize, seed: u64, index: usize) -> Result<Vec<f64>> {
    let mut rng = simulation_rng(seed, index);
    let data = DMatrix::from_fn(n, p, |_, _| StandardNormal.sample(&mut rng));
    Ok(eigenvalues_desc(&correlation_matrix(&data)?))
}

/// Count of leading positions with `observed > simulated`.
pub fn retained_count(observed: &[f64], simulated: &[f64]) -> usize {
    observed
        .iter()
        .zip(simulated)
        .take_while(|(o, s)| o > s)
        .count()
}

/// Compares the eigenvalues of `data`'s correlation matrix with the mean
/// eigenvalues of `n_sims` same-shaped standard-normal data sets.
pub fn parallel_analysis(data: &DMatrix<f64>, n_sims: usize, seed: u64) -> Result<ParallelAnalysis> {
    let observed = eigenvalues_desc(&correlation_matrix(data)?);
    parallel_analysis_with_observed(observed, data.nrows(), n_sims, seed)
}

/// Parallel analysis when the observed eigenvalues are already known.
pub fn parallel_analysis_with_observed(
    observed: Vec<f64>,
    n: usize,
    n_sims: usize,
    seed: u64,
) -> Result<ParallelAnalysis> {
    if n_sims == 0 {
        return Err(Error::Analysis("parallel analysis needs at least one simulation".into()));
    }
    let p = observed.len();
    let sims: Vec<Vec<f64>> = (0..n_sims)
        .into_par_iter()
        .map(|i| simulate_eigenvalues(n, p, seed, i))
        .collect::<Result<_>>()?;
    let mut simulated = vec![0.0; p];
    for sim in &sims {
        for (acc, v) in simulated.iter_mut().zip(sim) {
            *acc += v;
        }
    }
    simulated.iter_mut().for_each(|v| *v /= n_sims as f64);
    Ok(ParallelAnalysis {
        retained_factors: retained_count(&observed, &simulated),
        observed_eigenvalues: observed,
        simulated_eigenvalues: simulated,
        n_sims,
        seed,
    })
}
