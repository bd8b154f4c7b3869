use thiserror::Error;

/// Errors produced by metric computations, selectors, evaluators, data
/// ingestion and the benchmark engine.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an operation's arguments was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An integration/derivative range falls outside the curve support.
    #[error("invalid range: {0}")]
    InvalidRange(String),

    /// The Nogueira denominator k̄/d·(1−k̄/d) is zero (all rows select
    /// everything or nothing), so the stability value is undefined.
    #[error("degenerate selection: {0}")]
    DegenerateSelection(String),

    /// The consistency index is undefined for k = 0 or k = d.
    #[error("consistency index undefined: {0}")]
    UndefinedIndex(String),

    /// A CSV cell could not be parsed. Row and column are 1-based as they
    /// appear in the file.
    #[error("format error in {path} at row {row}, column {column}: {message}")]
    Format {
        path: String,
        row: usize,
        column: usize,
        message: String,
    },

    /// The file parsed but cannot be turned into a usable dataset.
    #[error("ingestion error: {0}")]
    Ingestion(String),

    /// A benchmark run failed; carries enough context to name the job.
    #[error("run failed for dataset `{dataset}`, selector `{selector}`{}: {source}",
            k.map(|k| format!(", k={k}")).unwrap_or_default())]
    RunFailed {
        dataset: String,
        selector: String,
        k: Option<usize>,
        #[source]
        source: Box<Error>,
    },

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }

    /// True for errors caused by unreadable or malformed input data, as
    /// opposed to bad parameters. The CLI maps these to a distinct exit code.
    pub fn is_data_error(&self) -> bool {
        match self {
            Error::Format { .. } | Error::Ingestion(_) | Error::Io { .. } => true,
            Error::RunFailed { source, .. } => source.is_data_error(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
