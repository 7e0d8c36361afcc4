use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter `{0}` must be positive")]
    NonPositiveParameter(&'static str),

    #[error("parameter `{0}` must be finite")]
    NonFiniteParameter(&'static str),

    #[error("parameter `{0}` must be nonzero")]
    ZeroParameter(&'static str),

    #[error("negative argument {0} outside the function's domain")]
    NegativeArgument(f64),

    #[error("grid too coarse for {what}: need at least {suggested_min} samples")]
    GridTooCoarse { what: String, suggested_min: usize },

    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("grid has zero total mass")]
    ZeroMass,

    #[error("invalid axis: {0}")]
    InvalidAxis(String),

    #[error("invalid nonlinearity profile: {0}")]
    InvalidProfile(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
