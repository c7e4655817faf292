use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("missing input: {0}")]
    MissingInput(String),

    /// Points where a nonlinearity is non-finite. `points` are flat grid
    /// indices, `positions` the matching coordinates.
    #[error("singular nonlinearity at {} point(s), first at {:?}", points.len(), positions.first())]
    Singular {
        points: Vec<usize>,
        positions: Vec<Vec<f64>>,
    },

    #[error("step {step} failed: {reason}")]
    StepFailure {
        step: usize,
        reason: String,
        residuals: Vec<f64>,
    },

    #[error("unsupported boundary: {0}")]
    UnsupportedBoundary(String),

    #[error("no nodes found; enhancement profile is empty")]
    EmptyProfile,

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
