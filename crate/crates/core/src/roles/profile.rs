use std::fmt::Write as _;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::assign::RoleFactorModel;
use super::similarity::kh_similarity;
use crate::error::Result;

/// What contributor vectors are compared against.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileBasis {
    /// One merged vector per role.
    #[default]
    Merged,
    /// Every factor separately; a role scores its best factor.
    RawFactors,
}

impl std::str::FromStr for ProfileBasis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "merged" => Ok(ProfileBasis::Merged),
            "raw-factors" | "raw" => Ok(ProfileBasis::RawFactors),
            other => Err(format!("unknown profile basis {other:?} (merged, raw-factors)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeveloperRoleProfile {
    pub key: String,
    /// Similarity to each role, in role order.
    pub scores: IndexMap<String, f64>,
    /// Highest-scoring role; the first role on ties.
    pub dominant: String,
}

/// Scores a contributor's language vector against every role.
pub fn developer_profile(
    key: &str,
    vector: &[f64],
    model: &RoleFactorModel,
    basis: ProfileBasis,
) -> Result<DeveloperRoleProfile> {
    let mut scores = IndexMap::new();
    for role in &model.roles {
        let score = match basis {
            ProfileBasis::Merged => match model.role_vectors.get(role) {
                Some(v) => kh_similarity(vector, v)?,
                None => 0.0,
            },
            ProfileBasis::RawFactors => {
                let mut best = 0.0f64;
                for (assignment, v) in model.factor_assignments.iter().zip(&model.factor_vectors) {
                    if &assignment.role == role {
                        best = best.max(kh_similarity(vector, v)?);
                    }
                }
                best
            }
        };
        scores.insert(role.clone(), score);
    }
    let mut dominant = model.roles.first().cloned().unwrap_or_default();
    let mut best = f64::NEG_INFINITY;
    for (role, &s) in &scores {
        if s > best {
            best = s;
            dominant = role.clone();
        }
    }
    if best <= 0.0 {
        log::warn!("contributor {key} matches no role; dominant role defaults to {dominant}");
    }
    Ok(DeveloperRoleProfile {
        key: key.to_string(),
        scores,
        dominant,
    })
}

/// Contributor classes compared in the radar chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ContributorClass {
    /// The single full-coverage developer of a One-Dev-ALL-MS project.
    #[serde(rename = "One-Dev-ALL-MS")]
    OneDevAllMs,
    /// Full-coverage developers of Multi-Dev-ALL-MS projects.
    #[serde(rename = "Multi-Dev-ALL-MS")]
    MultiDevAllMs,
    /// Developers of Multi-Dev-SOME-MS projects.
    #[serde(rename = "Multi-Dev-SOME-MS")]
    MultiDevSomeMs,
}

impl ContributorClass {
    pub const ALL: [ContributorClass; 3] = [
        ContributorClass::OneDevAllMs,
        ContributorClass::MultiDevAllMs,
        ContributorClass::MultiDevSomeMs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ContributorClass::OneDevAllMs => "One-Dev-ALL-MS",
            ContributorClass::MultiDevAllMs => "Multi-Dev-ALL-MS",
            ContributorClass::MultiDevSomeMs => "Multi-Dev-SOME-MS",
        }
    }
}

/// Mean role scores per contributor class, roles in `roles` order.
/// Classes without members are omitted.
pub fn strategy_role_distribution(
    members: &[(ContributorClass, &DeveloperRoleProfile)],
    roles: &[String],
) -> IndexMap<String, IndexMap<String, f64>> {
    let mut out = IndexMap::new();
    for class in ContributorClass::ALL {
        let group: Vec<&DeveloperRoleProfile> = members
            .iter()
            .filter(|(c, _)| *c == class)
            .map(|(_, p)| *p)
            .collect();
        if group.is_empty() {
            log::info!("no contributors in class {}; omitted from the radar data", class.name());
            continue;
        }
        let means = roles
            .iter()
            .map(|role| {
                let total: f64 = group.iter().map(|p| p.scores.get(role).copied().unwrap_or(0.0)).sum();
                (role.clone(), total / group.len() as f64)
            })
            .collect();
        out.insert(class.name().to_string(), means);
    }
    out
}

const PALETTE: [&str; 3] = ["#1f77b4", "#d62728", "#2ca02c"];

/// Static radar chart of the class means.
pub fn render_radar_svg(distribution: &IndexMap<String, IndexMap<String, f64>>, roles: &[String]) -> String {
    let (size, cx, cy, radius) = (480.0, 240.0, 230.0, 160.0);
    let max = distribution
        .values()
        .flat_map(|m| m.values().copied())
        .fold(0.0f64, f64::max)
        .max(1e-9);
    let n = roles.len().max(1) as f64;
    let point = |i: usize, v: f64| {
        let angle = -std::f64::consts::FRAC_PI_2 + 2.0 * std::f64::consts::PI * i as f64 / n;
        (cx + radius * v * angle.cos(), cy + radius * v * angle.sin())
    };
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{h}" viewBox="0 0 {size} {h}" font-family="sans-serif" font-size="12">"#,
        h = size + 40.0
    );
    for ring in 1..=4 {
        let r = ring as f64 / 4.0;
        let pts: Vec<String> = (0..roles.len())
            .map(|i| {
                let (x, y) = point(i, r);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(svg, r##"  <polygon points="{}" fill="none" stroke="#cccccc"/>"##, pts.join(" "));
    }
    for (i, role) in roles.iter().enumerate() {
        let (x, y) = point(i, 1.0);
        let (lx, ly) = point(i, 1.15);
        let _ = writeln!(svg, r##"  <line x1="{cx}" y1="{cy}" x2="{x:.2}" y2="{y:.2}" stroke="#cccccc"/>"##);
        let _ = writeln!(
            svg,
            r#"  <text x="{lx:.2}" y="{ly:.2}" text-anchor="middle">{}</text>"#,
            escape(role)
        );
    }
    for (c, (class, means)) in distribution.iter().enumerate() {
        let color = PALETTE[c % PALETTE.len()];
        let pts: Vec<String> = roles
            .iter()
            .enumerate()
            .map(|(i, role)| {
                let (x, y) = point(i, means.get(role).copied().unwrap_or(0.0) / max);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            svg,
            r#"  <polygon points="{}" fill="{color}" fill-opacity="0.15" stroke="{color}" stroke-width="2"/>"#,
            pts.join(" ")
        );
        let _ = writeln!(
            svg,
            r#"  <text x="10" y="{:.0}" fill="{color}">{}</text>"#,
            size + 4.0 + 14.0 * c as f64,
            escape(class)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
