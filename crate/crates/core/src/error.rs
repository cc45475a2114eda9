use thiserror::Error;

/// Errors raised by bound evaluation, metric computation and the CLI layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("pulse metric diverges: {0}")]
    DivergentMetric(String),

    #[error("differential entropy is undefined for a discrete distribution")]
    DiscreteDistribution,

    #[error("{name} = {value} is outside {range}")]
    OutOfRange { name: &'static str, value: f64, range: &'static str },

    #[error("infeasible constraint geometry: {0}")]
    InvalidRegime(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown figure `{0}`")]
    UnknownFigure(String),

    #[error("unknown bound `{0}`")]
    UnknownBound(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
