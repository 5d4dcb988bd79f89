use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("exponent must lie in (0, +inf], got {0}")]
    NonPositiveExponent(f64),

    #[error("cannot parse exponent `{0}`")]
    ParseExponent(String),

    #[error("exponent vector must not be empty")]
    EmptyExponentVector,

    #[error("conjugate exponent requires p >= 1, got {0}")]
    ExponentBelowOne(f64),

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    /// A formula hypothesis or regime condition does not hold for the inputs.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("invalid tensor: {0}")]
    InvalidTensor(String),

    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch { left: Vec<usize>, right: Vec<usize> },

    #[error("splitting identity fails on axis {axis}: 1/r = {expected}, sum of 1/q = {found}")]
    InvalidSplitting { axis: usize, expected: f64, found: f64 },

    #[error("dimension mismatch in slot {slot}: expected {expected}, found {found}")]
    DimensionMismatch { slot: usize, expected: usize, found: usize },

    #[error("enumeration needs 2^{log2_required} evaluations, budget is {budget}")]
    BudgetExceeded { log2_required: u32, budget: u64 },

    #[error("incompatible configuration: {0}")]
    Incompatible(String),

    #[error("fit failed: {0}")]
    Fit(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
