use thiserror::Error;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("duplicate edge {source_label} -> {target} on line {line}")]
    DuplicateEdge {
        source_label: String,
        target: String,
        line: u64,
    },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("label error: {0}")]
    Label(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unknown label `{0}`")]
    Lookup(String),

    #[error("operation would leave an empty network")]
    EmptyNetwork,

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("{measure} did not converge after {iterations} iterations (residual {residual:e})")]
    Convergence {
        measure: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("size error: {0}")]
    Size(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    ///
    /// 2 covers IO and parsing, 3 covers domain violations, 4 covers solver
    /// non-convergence. Usage errors map to 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::DuplicateEdge { .. }
            | Error::Shape(_)
            | Error::Label(_)
            | Error::Io(_)
            | Error::Json(_)
            | Error::Csv(_) => 2,
            Error::Usage(_) => 1,
            Error::Convergence { .. } => 4,
            Error::Domain(_)
            | Error::Lookup(_)
            | Error::EmptyNetwork
            | Error::Dimension(_)
            | Error::Size(_) => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
