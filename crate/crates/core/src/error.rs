use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Pipeline stage an error originated from. Determines the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Config,
    Mining,
    Analysis,
}

impl Stage {
    pub fn exit_code(self) -> i32 {
        match self {
            Stage::Config => 2,
            Stage::Mining => 3,
            Stage::Analysis => 4,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Config => "config",
            Stage::Mining => "mining",
            Stage::Analysis => "analysis",
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("manifest {path}: {message}")]
    Manifest { path: PathBuf, message: String },

    #[error("invalid manifest: {0}")]
    InvalidManifest(String),

    #[error("author identity has neither name nor email")]
    EmptyIdentity,

    #[error("alias file {path}, line {line}: {message}")]
    AliasFile {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("repository {path} is not readable: {message}")]
    Repository { path: PathBuf, message: String },

    #[error(
        "repository {0} is a shallow clone; history is truncated, fetch the full history (git fetch --unshallow)"
    )]
    ShallowClone(PathBuf),

    #[error("commit cache {path}: {message}")]
    Cache { path: PathBuf, message: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("no projects selected")]
    NoProjects,

    #[error("{0}")]
    Analysis(String),

    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("correlation matrix is singular or not positive definite (determinant {det:e}); prune collinear or near-constant columns")]
    SingularCorrelation { det: f64 },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn stage(&self) -> Stage {
        match self {
            Error::Manifest { .. }
            | Error::InvalidManifest(_)
            | Error::AliasFile { .. }
            | Error::Config(_) => Stage::Config,
            Error::EmptyIdentity
            | Error::Repository { .. }
            | Error::ShallowClone(_)
            | Error::Cache { .. } => Stage::Mining,
            Error::NoProjects
            | Error::Analysis(_)
            | Error::LengthMismatch { .. }
            | Error::SingularCorrelation { .. }
            | Error::Json(_)
            | Error::Csv(_) => Stage::Analysis,
            Error::Io { .. } => Stage::Analysis,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.stage().exit_code()
    }
}
