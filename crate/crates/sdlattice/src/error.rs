use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("invalid function: {0}")]
    InvalidFunction(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("flows are defined over different measure spaces")]
    MismatchedSpaces,
    #[error("family is not directed: no in-family bound for a requested pair")]
    NotDirected,
    #[error("tail oracle monotonicity violated near s = {0}")]
    OracleViolation(f64),
    #[error("moment-tail query not available on this oracle")]
    MissingMomentTail,
    #[error("threshold search exhausted the horizon at level {level}: family not tight at the requested level")]
    NotTight { level: usize },
    #[error("family not uniformly integrable at the queried horizon")]
    NotUniformlyIntegrable,
    #[error("running bound escaped the supplied bound: family unbounded")]
    Unbounded,
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
