use std::fmt::Write as _;

use super::config::RunConfig;
use super::pipeline::Analysis;

fn cell(s: &str) -> String {
    s.replace('|', "\\|")
}

/// Markdown overview of a run.
pub fn render_summary(config: &RunConfig, analysis: &Analysis) -> String {
    let mut out = String::new();
    let selected: Vec<_> = analysis.selected().collect();
    let _ = writeln!(out, "# Microservice ownership report\n");
    let _ = writeln!(
        out,
        "Projects mined: {}. Projects selected: {}.\n",
        analysis.projects.len(),
        selected.len()
    );
    if let Some(seed) = config.seed {
        let _ = writeln!(out, "Seed: {seed}\n");
    }

    let _ = writeln!(out, "## Projects\n");
    let _ = writeln!(
        out,
        "| Project | Selected | Strategy | #MS | #Developers | Shared MS | Median MS/dev | Median commit-back |"
    );
    let _ = writeln!(out, "|---|---|---|---:|---:|---:|---:|---:|");
    for p in &analysis.projects {
        let m = &p.metrics;
        let median = |s: &Option<crate::metrics::FiveNumberSummary>| {
            s.as_ref().map_or("-".to_string(), |s| format!("{}", s.median))
        };
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} |",
            cell(&m.project),
            if m.selected { "yes" } else { "no" },
            if m.selected { m.strategy.display_name() } else { "-" },
            m.n_microservices,
            m.n_developers,
            m.shared.shared,
            median(&m.ms_per_developer),
            median(&m.commit_back),
        );
    }

    let _ = writeln!(out, "\n## Strategies\n");
    let _ = writeln!(out, "| Strategy | Projects |");
    let _ = writeln!(out, "|---|---:|");
    for (label, count) in analysis.strategy_counts() {
        let _ = writeln!(out, "| {} (`{}`) | {count} of {} |", label.display_name(), label.as_str(), selected.len());
    }
    let no_shared = selected.iter().filter(|p| p.metrics.no_shared_developers).count();
    let _ = writeln!(
        out,
        "\nProjects where no microservice shares a developer: {no_shared} of {}.",
        selected.len()
    );

    if let Some(efa) = &analysis.efa {
        let d = &efa.diagnostics;
        let _ = writeln!(out, "\n## Factor analysis\n");
        let _ = writeln!(out, "- Contributors: {}", d.n_contributors);
        let _ = writeln!(out, "- Languages analysed: {}", d.analyzed_languages.len());
        let _ = writeln!(out, "- KMO: {:.3}", d.kmo);
        let _ = writeln!(
            out,
            "- Bartlett: chi2 = {:.2}, df = {}, p = {:.3e}",
            d.bartlett_chi2, d.bartlett_df, d.bartlett_p
        );
        let _ = writeln!(
            out,
            "- Factors retained by parallel analysis: {} ({} simulations); extracted: {}",
            d.retained_factors, d.n_sims, d.extracted_factors
        );
        if !d.heywood_languages.is_empty() {
            let _ = writeln!(out, "- Heywood cases clipped: {}", d.heywood_languages.join(", "));
        }
    }

    if let Some(roles) = &analysis.roles {
        let _ = writeln!(out, "\n## Roles\n");
        let _ = writeln!(out, "| Factor | Role | Similarity | Stable languages |");
        let _ = writeln!(out, "|---|---|---:|---|");
        for a in &roles.model.factor_assignments {
            let _ = writeln!(
                out,
                "| {} | {} | {:.3} | {} |",
                a.factor,
                cell(&a.role),
                a.similarity,
                cell(&a.stable_languages.join(", "))
            );
        }
        if !roles.radar.is_empty() {
            let _ = writeln!(out, "\n### Mean role score by contributor class\n");
            let mut header = String::from("| Class |");
            let mut rule = String::from("|---|");
            for r in &roles.model.roles {
                let _ = write!(header, " {} |", cell(r));
                rule.push_str("---:|");
            }
            let _ = writeln!(out, "{header}\n{rule}");
            for (class, means) in &roles.radar {
                let mut row = format!("| {class} |");
                for r in &roles.model.roles {
                    let _ = write!(row, " {:.3} |", means.get(r).copied().unwrap_or(0.0));
                }
                let _ = writeln!(out, "{row}");
            }
        }
    }
    out
}
