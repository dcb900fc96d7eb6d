use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("degenerate data: {0}")]
    DegenerateData(String),

    #[error("non-finite input at index {0}")]
    NonFinite(usize),

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("evaluation failure: {0}")]
    Evaluation(String),

    #[error("singular regression: {0}")]
    Singular(String),

    #[error("infeasible fit: {0}")]
    InfeasibleFit(String),

    #[error("scaling factor out of range: k={k}, T={t}")]
    ScalingOutOfRange { k: usize, t: usize },

    #[error("empty input: {0}")]
    Empty(String),

    #[error("{file}:{line}: {msg}")]
    Parse { file: String, line: usize, msg: String },

    #[error("{file}:{line}: price must be positive, got {value}")]
    NonPositivePrice { file: String, line: usize, value: f64 },

    #[error("{file}: duplicate date {date}")]
    DuplicateDate { file: String, date: String },

    #[error("invalid date: {0}")]
    InvalidDate(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(String),

    #[error("[{stage}] {source}")]
    Stage {
        stage: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn at_stage(self, stage: impl Into<String>) -> Self {
        Error::Stage { stage: stage.into(), source: Box::new(self) }
    }

    /// Innermost error, with stage labels stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            e => e,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_finite(x: &[f64]) -> Result<()> {
    match x.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::NonFinite(i)),
        None => Ok(()),
    }
}
