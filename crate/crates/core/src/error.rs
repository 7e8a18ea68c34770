use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("adjustment vector is empty")]
    Empty,
    #[error("entry {index} is not finite")]
    NonFinite { index: usize },
    #[error("budget must be positive, got {0}")]
    NonPositiveBudget(String),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("instance too large for exhaustive search: n = {n}, limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("grid resolution must be at least 1")]
    InvalidResolution,
    #[error("asset {index} has an empty id")]
    EmptyAssetId { index: usize },
    #[error("duplicate asset id `{0}`")]
    DuplicateAssetId(String),
    #[error("asset `{id}` has negative value {value} and short positions are disabled")]
    ShortPosition { id: String, value: String },
    #[error("asset `{id}` has target {target} outside [0, 1]")]
    TargetOutOfRange { id: String, target: String },
    #[error("targets sum to {0}, expected 1")]
    TargetSum(String),
    #[error("adjustments sum to {sum} but budget is {budget}")]
    BudgetMismatch { sum: String, budget: String },
    #[error("adjustment {index} is negative: {value}")]
    NegativeAdjustment { index: usize, value: String },
    #[error("portfolio total after the contribution must be positive, got {0}")]
    NonPositiveTotal(String),
    #[error("value {0} does not fit in integer cents")]
    CentsOverflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
