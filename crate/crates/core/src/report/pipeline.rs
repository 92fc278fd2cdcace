use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use indexmap::IndexMap;
use rayon::prelude::*;
use serde::Serialize;

use super::boxplot::{emit_boxplot_data, BoxplotRow};
use super::config::{Command, ReportFormat, RunConfig};
use super::io::write_atomic;
use super::summary::render_summary;
use crate::efa::{build_language_matrix, run_efa, DeveloperLanguageMatrix, EfaResult};
use crate::error::{Error, Result};
use crate::languages::LanguageMap;
use crate::metrics::{ProjectMetrics, StrategyLabel};
use crate::miner::{self, load_manifest, mine_project, AliasMap, CommitRecord, MinedProject, TouchEvent};
use crate::roles::{
    assign_roles, developer_profile, render_radar_svg, strategy_role_distribution, ContributorClass,
    DeveloperRoleProfile, RoleFactorModel, RoleReferenceTable,
};

/// One analysed project.
#[derive(Debug, Clone)]
pub struct ProjectAnalysis {
    pub mined: MinedProject,
    pub touches: Vec<TouchEvent>,
    pub metrics: ProjectMetrics,
}

/// Role stage output.
#[derive(Debug, Clone)]
pub struct RoleAnalysis {
    pub model: RoleFactorModel,
    pub profiles: Vec<DeveloperRoleProfile>,
    pub radar: IndexMap<String, IndexMap<String, f64>>,
}

/// Everything computed by a run, before rendering.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub projects: Vec<ProjectAnalysis>,
    pub language_matrix: Option<DeveloperLanguageMatrix>,
    pub efa: Option<EfaResult>,
    pub roles: Option<RoleAnalysis>,
}

impl Analysis {
    pub fn selected(&self) -> impl Iterator<Item = &ProjectAnalysis> {
        self.projects.iter().filter(|p| p.metrics.selected)
    }

    pub fn strategy_counts(&self) -> BTreeMap<StrategyLabel, usize> {
        let mut counts: BTreeMap<StrategyLabel, usize> = StrategyLabel::ALL.iter().map(|&l| (l, 0)).collect();
        for p in self.selected() {
            *counts.entry(p.metrics.strategy).or_default() += 1;
        }
        counts
    }
}

/// Output files keyed by bundle-relative path.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReportBundle {
    pub files: BTreeMap<String, Vec<u8>>,
}

impl ReportBundle {
    fn add(&mut self, name: impl Into<String>, bytes: impl Into<Vec<u8>>) {
        self.files.insert(name.into(), bytes.into());
    }

    fn add_json<T: Serialize>(&mut self, name: impl Into<String>, value: &T) -> Result<()> {
        let mut bytes = serde_json::to_vec_pretty(value)?;
        bytes.push(b'\n');
        self.add(name, bytes);
        Ok(())
    }

    /// Writes every file atomically under `dir`.
    pub fn write_to(&self, dir: &Path) -> Result<()> {
        for (name, bytes) in &self.files {
            write_atomic(&dir.join(name), bytes)?;
        }
        Ok(())
    }
}

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' || c == '.' { c } else { '_' })
        .collect()
}

/// Mines and analyses everything the configured command needs.
pub fn analyze(config: &RunConfig) -> Result<Analysis> {
    config.validate()?;
    let paths = config.manifest_paths()?;
    if paths.is_empty() {
        return Err(Error::NoProjects);
    }
    let mut manifests = Vec::with_capacity(paths.len());
    let mut names = BTreeSet::new();
    for path in &paths {
        let mut m = load_manifest(path)?;
        if let Some(as_of) = config.as_of {
            m.as_of = as_of;
        }
        if !names.insert(m.name.clone()) {
            return Err(Error::Config(format!("duplicate project name {:?}", m.name)));
        }
        manifests.push(m);
    }
    let aliases = match &config.alias_file {
        Some(p) => AliasMap::load(p)?,
        None => AliasMap::default(),
    };
    let languages = LanguageMap::default();
    let reference = match &config.reference_table {
        Some(p) => RoleReferenceTable::load(p)?,
        None => RoleReferenceTable::default(),
    };
    reference.validate_against(languages.languages())?;

    let cache = config.cache_dir.as_deref();
    let mined: Vec<MinedProject> = manifests
        .par_iter()
        .map(|m| mine_project(m, &aliases, cache))
        .collect::<Result<_>>()?;

    let projects: Vec<ProjectAnalysis> = mined
        .into_iter()
        .map(|mined| {
            let mut touches = miner::attribute_touches(&mined.manifest, &mined.commits, &languages);
            if config.exclude_bots {
                touches.retain(|t| !t.author_id.is_bot());
            }
            let metrics = ProjectMetrics::compute(&mined.manifest, &touches, config.sequence_mode);
            ProjectAnalysis {
                mined,
                touches,
                metrics,
            }
        })
        .collect();

    let mut analysis = Analysis {
        projects,
        language_matrix: None,
        efa: None,
        roles: None,
    };
    if !config.command.needs_metrics() {
        return Ok(analysis);
    }
    if analysis.selected().next().is_none() {
        return Err(Error::NoProjects);
    }
    if !config.command.needs_efa() {
        return Ok(analysis);
    }

    let mut files: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for p in analysis.selected() {
        for t in &p.touches {
            files
                .entry(t.author_id.canonical_key.clone())
                .or_default()
                .extend(t.files.iter().cloned());
        }
    }
    let matrix = build_language_matrix(&files, &languages, config.efa.normalization);
    let efa = run_efa(&matrix, &config.efa_options())?;

    if config.command.needs_roles() {
        let model = assign_roles(&efa.model, &reference, efa.model.stable_threshold);
        let mut profiles = Vec::with_capacity(matrix.n_contributors());
        for (i, key) in matrix.contributors.iter().enumerate() {
            let vector = project_onto(&matrix.row(i), &matrix.languages, &model.languages);
            profiles.push(developer_profile(key, &vector, &model, config.profile_basis)?);
        }
        let by_key: BTreeMap<&str, &DeveloperRoleProfile> =
            profiles.iter().map(|p| (p.key.as_str(), p)).collect();
        let mut members = BTreeSet::new();
        for p in analysis.selected() {
            let m = &p.metrics;
            let (class, keys): (ContributorClass, Vec<&String>) = match m.strategy {
                StrategyLabel::OneDevAllMs => (ContributorClass::OneDevAllMs, m.full_coverage_developers.iter().collect()),
                StrategyLabel::MultiDevAllMs => (ContributorClass::MultiDevAllMs, m.full_coverage_developers.iter().collect()),
                StrategyLabel::MultiDevSomeMs => (ContributorClass::MultiDevSomeMs, m.developers.iter().map(|d| &d.key).collect()),
                StrategyLabel::OneMsPerDeveloper => continue,
            };
            for k in keys {
                if by_key.contains_key(k.as_str()) {
                    members.insert((class, k.clone()));
                }
            }
        }
        let members: Vec<(ContributorClass, &DeveloperRoleProfile)> =
            members.iter().map(|(c, k)| (*c, by_key[k.as_str()])).collect();
        let radar = strategy_role_distribution(&members, &model.roles);
        analysis.roles = Some(RoleAnalysis { model, profiles, radar });
    }
    analysis.language_matrix = Some(matrix);
    analysis.efa = Some(efa);
    Ok(analysis)
}

fn project_onto(values: &[f64], from: &[String], to: &[String]) -> Vec<f64> {
    to.iter()
        .map(|l| from.iter().position(|x| x == l).map_or(0.0, |i| values[i]))
        .collect()
}

fn commits_ndjson(commits: &[CommitRecord]) -> Result<Vec<u8>> {
    miner::cache::encode_commits(commits)
}

#[derive(Serialize)]
struct SelectionRow<'a> {
    project: &'a str,
    selected: bool,
    n_microservices: usize,
    commits: usize,
}

/// Renders the report bundle for the configured command.
pub fn render_bundle(config: &RunConfig, analysis: &Analysis) -> Result<ReportBundle> {
    let mut bundle = ReportBundle::default();
    bundle.add_json("run_config.json", config)?;
    let cmd = config.command;

    if matches!(cmd, Command::Mine | Command::All) {
        for p in &analysis.projects {
            let name = format!("commits/{}.ndjson", file_stem(&p.mined.manifest.name));
            bundle.add(name, commits_ndjson(&p.mined.commits)?);
        }
    }
    if cmd.needs_metrics() {
        let selection: Vec<SelectionRow> = analysis
            .projects
            .iter()
            .map(|p| SelectionRow {
                project: &p.metrics.project,
                selected: p.metrics.selected,
                n_microservices: p.mined.manifest.microservice_paths.len(),
                commits: p.mined.commits.len(),
            })
            .collect();
        bundle.add_json("selection.json", &selection)?;
        for p in analysis.selected() {
            bundle.add_json(format!("projects/{}.json", file_stem(&p.metrics.project)), &p.metrics)?;
        }
    }
    if matches!(cmd, Command::Metrics | Command::Report | Command::All) {
        let mut ms_rows = Vec::new();
        let mut back_rows = Vec::new();
        for p in analysis.selected() {
            let m = &p.metrics;
            let ms: Vec<f64> = m.developers.iter().map(|d| d.distinct_ms as f64).collect();
            let back: Vec<f64> = m.developers.iter().map(|d| d.commit_back as f64).collect();
            ms_rows.extend(BoxplotRow::new(&m.project, m.n_developers, m.n_microservices, &ms));
            back_rows.extend(BoxplotRow::new(&m.project, m.n_developers, m.n_microservices, &back));
        }
        bundle.add("boxplot_ms_per_developer.csv", emit_boxplot_data(&ms_rows));
        bundle.add("boxplot_commit_back.csv", emit_boxplot_data(&back_rows));
        let shared: Vec<String> = std::iter::once("project,shared,not_shared".to_string())
            .chain(analysis.selected().map(|p| {
                format!(
                    "{},{},{}",
                    crate::efa::csv_field(&p.metrics.project),
                    p.metrics.shared.shared,
                    p.metrics.shared.not_shared
                )
            }))
            .collect();
        bundle.add("shared_microservices.csv", shared.join("\n") + "\n");
    }
    if let Some(efa) = &analysis.efa {
        bundle.add_json("efa_diagnostics.json", &efa.diagnostics)?;
        bundle.add("loadings.csv", efa.model.loadings_csv());
    }
    if let Some(roles) = &analysis.roles {
        bundle.add_json("role_model.json", &roles.model)?;
        bundle.add_json("role_profiles.json", &roles.profiles)?;
        bundle.add("role_profiles.csv", profiles_csv(&roles.profiles, &roles.model.roles));
        bundle.add_json("radar.json", &roles.radar)?;
        bundle.add("radar.svg", render_radar_svg(&roles.radar, &roles.model.roles));
    }
    if matches!(cmd, Command::Report | Command::All) {
        bundle.add("summary.md", render_summary(config, analysis));
    }
    bundle
        .files
        .retain(|name, _| name == "run_config.json" || ReportFormat::of_file(name).is_none_or(|f| config.formats.contains(&f)));
    Ok(bundle)
}

fn profiles_csv(profiles: &[DeveloperRoleProfile], roles: &[String]) -> String {
    let mut out = String::from("contributor");
    for r in roles {
        out.push(',');
        out.push_str(&crate::efa::csv_field(r));
    }
    out.push_str(",dominant\n");
    for p in profiles {
        out.push_str(&crate::efa::csv_field(&p.key));
        for r in roles {
            out.push_str(&format!(",{:.6}", p.scores.get(r).copied().unwrap_or(0.0)));
        }
        out.push(',');
        out.push_str(&crate::efa::csv_field(&p.dominant));
        out.push('\n');
    }
    out
}

/// Runs the configured command end to end and writes the bundle. Nothing is
/// written when any stage fails.
pub fn run_pipeline(config: &RunConfig) -> Result<ReportBundle> {
    let analysis = analyze(config)?;
    let bundle = render_bundle(config, &analysis)?;
    bundle.write_to(&config.out_dir)?;
    Ok(bundle)
}
