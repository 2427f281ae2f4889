use thiserror::Error;

/// Errors raised by constructors, validation, and file loading.
#[derive(Debug, Error)]
pub enum Error {
    #[error("need at least 2 categories per variable, got {k_x}x{k_y}")]
    CategoryCount { k_x: usize, k_y: usize },
    #[error("alpha must be positive and finite, got {0}")]
    InvalidAlpha(f64),
    #[error("{axis} index {index} out of range for {size} categories")]
    IndexOutOfRange { axis: char, index: usize, size: usize },
    #[error("expected a {k_x}x{k_y} matrix, got {got} entries")]
    ShapeMismatch { k_x: usize, k_y: usize, got: usize },
    #[error("joint probabilities must sum to 1, got {0}")]
    NotNormalized(f64),
    #[error("entry at ({x},{y}) must be nonnegative and finite, got {value}")]
    InvalidEntry { x: usize, y: usize, value: f64 },
    #[error("marginal of {axis}={index} is zero, conditionals are undefined")]
    ZeroMarginal { axis: char, index: usize },
    #[error("world is {world_x}x{world_y} but counts are {counts_x}x{counts_y}")]
    DimensionMismatch {
        world_x: usize,
        world_y: usize,
        counts_x: usize,
        counts_y: usize,
    },
    #[error("total count must be nonnegative and finite, got {0}")]
    InvalidTotal(f64),
    #[error("invalid probability vector: {0}")]
    InvalidDistribution(String),
    #[error("invalid experiment config: {0}")]
    InvalidConfig(String),
    #[error("{path}: {msg}")]
    Format { path: String, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
