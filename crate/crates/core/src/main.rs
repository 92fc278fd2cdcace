use std::path::PathBuf;
use std::process::ExitCode;

use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand};

use msdev::efa::{ExtractionMethod, Normalization};
use msdev::metrics::SequenceMode;
use msdev::report::{run_pipeline, Command, ReportFormat, RunConfig};
use msdev::roles::ProfileBasis;

#[derive(Parser)]
#[command(name = "msdev", version, about = "Microservice ownership and developer role analysis")]
struct Cli {
    #[command(subcommand)]
    command: Sub,

    /// Commit cache directory.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Output directory for the report bundle.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,

    /// RNG seed for parallel analysis. Required when factor analysis runs.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Snapshot date overriding every manifest's `as_of`.
    #[arg(long, global = true, value_name = "YYYY-MM-DD")]
    as_of: Option<NaiveDate>,
}

#[derive(Subcommand)]
enum Sub {
    /// Enumerate commits and write them as NDJSON.
    Mine(Opts),
    /// Ownership metrics and strategy labels.
    Metrics(Opts),
    /// Exploratory factor analysis over language contributions.
    Efa(Opts),
    /// Map factors to roles and profile contributors.
    Roles(Opts),
    /// Metrics, boxplot data and the markdown summary.
    Report(Opts),
    /// Every stage.
    All(Opts),
}

#[derive(Args)]
struct Opts {
    /// Project manifest files.
    manifests: Vec<PathBuf>,

    /// Directory of manifest files (`*.json`).
    #[arg(long)]
    dataset: Option<PathBuf>,

    /// Identity alias file: `canonical<TAB>alias` per line.
    #[arg(long)]
    alias_file: Option<PathBuf>,

    /// Drop identities ending in `[bot]`.
    #[arg(long)]
    exclude_bots: bool,

    /// Leave multi-microservice commits out of commit-back sequences.
    #[arg(long)]
    drop_multi_service_commits: bool,

    /// Parallel-analysis simulations.
    #[arg(long, default_value_t = 100)]
    sims: usize,

    /// Number of factors, overriding parallel analysis.
    #[arg(long)]
    factors: Option<usize>,

    /// Convergence tolerance for extraction and rotation.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,

    #[arg(long, default_value = "principal-axis")]
    extraction: ExtractionMethod,

    /// proportion or minmax.
    #[arg(long, default_value = "minmax")]
    normalization: Normalization,

    /// Role/language reference table (CSV).
    #[arg(long)]
    reference_table: Option<PathBuf>,

    /// merged or raw-factors.
    #[arg(long, default_value = "merged")]
    profile_basis: ProfileBasis,

    /// Comma-separated subset of json, csv, svg, markdown.
    #[arg(long, value_delimiter = ',')]
    formats: Vec<ReportFormat>,
}

fn build_config(cli: Cli) -> RunConfig {
    let (command, opts) = match cli.command {
        Sub::Mine(o) => (Command::Mine, o),
        Sub::Metrics(o) => (Command::Metrics, o),
        Sub::Efa(o) => (Command::Efa, o),
        Sub::Roles(o) => (Command::Roles, o),
        Sub::Report(o) => (Command::Report, o),
        Sub::All(o) => (Command::All, o),
    };
    let mut c = RunConfig::new(command, cli.out);
    c.manifests = opts.manifests;
    c.dataset_dir = opts.dataset;
    c.cache_dir = cli.cache_dir;
    c.seed = cli.seed;
    c.as_of = cli.as_of;
    c.alias_file = opts.alias_file;
    c.reference_table = opts.reference_table;
    c.exclude_bots = opts.exclude_bots;
    if opts.drop_multi_service_commits {
        c.sequence_mode = SequenceMode::DropMultiService;
    }
    c.profile_basis = opts.profile_basis;
    c.efa.n_sims = opts.sims;
    c.efa.factors = opts.factors;
    c.efa.tol = opts.tol;
    c.efa.extraction = opts.extraction;
    c.efa.normalization = opts.normalization;
    if !opts.formats.is_empty() {
        c.formats = opts.formats.into_iter().collect();
    }
    c
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let config = build_config(cli);
    match run_pipeline(&config) {
        Ok(bundle) => {
            println!("wrote {} files to {}", bundle.files.len(), config.out_dir.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("[{}] {e}", e.stage().as_str());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
