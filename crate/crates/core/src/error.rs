use thiserror::Error;

use crate::rational::Rational;

/// Every failure the library reports; each variant names the invariant that
/// did not hold.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse rational {input:?}: {reason}")]
    ParseRational { input: String, reason: String },

    #[error("invalid outcome space: {0}")]
    InvalidOutcomeSpace(String),

    #[error("weight of outcome {index} is negative ({value})")]
    NegativeWeight { index: usize, value: Rational },

    #[error("weights sum to {sum}, not 1")]
    SumNotOne { sum: Rational },

    #[error("expected {expected} weights, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("mixing weight {0} is outside [0, 1]")]
    AlphaOutOfRange(Rational),

    #[error("outcome spaces differ: {left} vs {right} outcomes")]
    SpaceMismatch { left: usize, right: usize },

    #[error("point is outside the simplex: {0}")]
    NotInSimplex(String),

    #[error("empty input")]
    EmptyInput,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("affine rank {rank} is below the required {required}")]
    RankDeficient { rank: usize, required: usize },

    #[error("expected {expected} points, found {found}")]
    WrongCount { expected: usize, found: usize },

    #[error("strict pair is indifferent along the elicited hyperplane direction")]
    InconsistentStrictPair,

    #[error("oracle has no solve capability")]
    NoSolveCapability,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("target is not in the affine hull of the points")]
    NotInAffineHull,

    #[error("representation has no orientation (no strict pair was given)")]
    UnorientedRepresentation,

    #[error("certificate rejected: {0}")]
    CertificateRejected(String),

    #[error("invalid oracle: {0}")]
    InvalidOracle(String),

    #[error("matrix must be rectangular with positive dimensions")]
    MalformedMatrix,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
