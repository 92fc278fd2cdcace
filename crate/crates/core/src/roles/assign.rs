use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::reference::{RoleReferenceTable, OTHERS_ROLE};
use super::similarity::kh_similarity;
use crate::efa::FactorModel;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorAssignment {
    pub factor: String,
    pub role: String,
    pub similarity: f64,
    /// Languages loading above the stable threshold, strongest first.
    pub stable_languages: Vec<String>,
}

/// Factors grouped into roles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoleFactorModel {
    /// Language space of every vector below.
    pub languages: Vec<String>,
    /// Role order: the reference roles, plus `Others` if the table lacks it.
    pub roles: Vec<String>,
    /// Clamped factor vectors, in factor order.
    pub factor_vectors: Vec<Vec<f64>>,
    pub factor_assignments: Vec<FactorAssignment>,
    /// Element-wise maximum of the clamped vectors of each role's factors.
    /// Roles without factors are absent.
    pub role_vectors: IndexMap<String, Vec<f64>>,
}

/// Element-wise maximum.
pub fn merge_max(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x.max(*y)).collect()
}

/// Assigns every factor the reference role it is most similar to.
///
/// Negative loadings are clamped to zero first. Factors with zero similarity
/// to every role become `Others`. Ties go to the earlier role.
pub fn assign_roles(model: &FactorModel, reference: &RoleReferenceTable, threshold: f64) -> RoleFactorModel {
    let languages = reference.languages.clone();
    let mut roles = reference.roles.clone();
    if !roles.iter().any(|r| r == OTHERS_ROLE) {
        roles.push(OTHERS_ROLE.to_string());
    }
    let reference_rows: Vec<Vec<f64>> = (0..reference.roles.len())
        .map(|r| reference.row_on(r, &languages))
        .collect();

    let mut factor_vectors = Vec::with_capacity(model.n_factors());
    let mut factor_assignments = Vec::with_capacity(model.n_factors());
    let mut role_vectors: IndexMap<String, Vec<f64>> = IndexMap::new();
    for (f, name) in model.factor_names().into_iter().enumerate() {
        let vector: Vec<f64> = languages
            .iter()
            .map(|l| {
                model
                    .languages
                    .iter()
                    .position(|x| x == l)
                    .map_or(0.0, |i| model.loadings[(i, f)].max(0.0))
            })
            .collect();
        let mut best = (OTHERS_ROLE.to_string(), 0.0);
        for (r, row) in reference_rows.iter().enumerate() {
            let s = kh_similarity(&vector, row).expect("same language space");
            if s > best.1 {
                best = (reference.roles[r].clone(), s);
            }
        }
        let (role, similarity) = best;
        role_vectors
            .entry(role.clone())
            .and_modify(|v| *v = merge_max(v, &vector))
            .or_insert_with(|| vector.clone());
        let stable_languages = model
            .stable_languages(f)
            .into_iter()
            .filter(|(_, v)| *v > threshold)
            .map(|(l, _)| l.to_string())
            .collect();
        factor_assignments.push(FactorAssignment {
            factor: name,
            role,
            similarity,
            stable_languages,
        });
        factor_vectors.push(vector);
    }
    // keep role order stable regardless of factor order
    role_vectors.sort_by(|a, _, b, _| {
        let pos = |r: &String| roles.iter().position(|x| x == r);
        pos(a).cmp(&pos(b))
    });
    RoleFactorModel {
        languages,
        roles,
        factor_vectors,
        factor_assignments,
        role_vectors,
    }
}
