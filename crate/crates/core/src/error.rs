//! Error type shared by every stage of the pipeline.
//!
//! Errors fall into three rough groups: malformed input (zero curve, bad
//! characteristic sequence, out-of-range derivative order), insufficient
//! precision (truncation too shallow, contact undecided, ambiguous branch
//! grouping), and structural violations (observed data contradicting a
//! counting identity that holds for every irreducible branch).  The last
//! group signals a numeric failure rather than interesting mathematics, so
//! messages carry enough context to point at the offending object.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("curve is the zero polynomial")]
    ZeroCurve,

    #[error("curve does not pass through the origin: f(0,0) != 0")]
    NotThroughOrigin,

    #[error("curve is divisible by x; f(0, y) vanishes identically")]
    DivisibleByX,

    #[error("exact mode cannot represent {0}; rerun in numeric mode")]
    ExactUnavailable(String),

    #[error("series truncation is too shallow: {0}")]
    DepthInsufficient(String),

    #[error("ramification index mismatch: {0}")]
    IndexMismatch(String),

    #[error("invalid series construction: {0}")]
    InvalidSeries(String),

    #[error("curve is not an irreducible branch: {0}")]
    NotIrreducible(String),

    #[error("invalid characteristic sequence: {0}")]
    InvalidCharacteristic(String),

    #[error("derivative order k = {k} out of range; need 1 <= k < {n}")]
    KOutOfRange { k: u64, n: u64 },

    #[error("invalid shape parameters: {0}")]
    InvalidShape(String),

    #[error("branch grouping is ambiguous: {0}")]
    AmbiguousGrouping(String),

    #[error("stratification mismatch: {0}")]
    StratumMismatch(String),

    #[error("ball polynomial fit failure: {0}")]
    FitFailure(String),

    #[error("contact order undecided at current depth: {0}")]
    ContactUndecided(String),

    #[error("contact order outside the predicted set: {0}")]
    ContactUnexpected(String),

    #[error("ball membership violation: {0}")]
    BallMismatch(String),

    #[error("structural property violated (numeric failure suspected): {0}")]
    PropertyViolation(String),

    #[error("numeric root finder failed: {0}")]
    NumericFailure(String),
}
