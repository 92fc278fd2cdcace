//! Pipeline orchestration, configuration and report rendering.

pub mod boxplot;
pub mod config;
pub mod io;
pub mod pipeline;
pub mod summary;

pub use boxplot::{emit_boxplot_data, BoxplotRow};
pub use config::{Command, EfaFlags, ReportFormat, RunConfig};
pub use io::write_atomic;
pub use pipeline::{analyze, render_bundle, run_pipeline, Analysis, ProjectAnalysis, ReportBundle, RoleAnalysis};
pub use summary::render_summary;
