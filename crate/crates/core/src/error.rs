use thiserror::Error;

/// Errors produced by the analysis, simulation and I/O layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} = {value} is outside [{lo}, {hi}]")]
    Domain {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("invalid degree distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operation requires a {expected} ensemble, got {found}")]
    WrongFamily {
        expected: &'static str,
        found: &'static str,
    },

    #[error("design rate {0} is outside (0, 1)")]
    InvalidRate(f64),

    #[error("no erasure probability in (0, 1) lets density evolution converge")]
    NoThreshold,

    #[error("trajectory is empty")]
    EmptyTrajectory,

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_unit(what: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::Domain {
            what,
            value,
            lo: 0.0,
            hi: 1.0,
        })
    }
}
