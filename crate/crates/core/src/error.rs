use thiserror::Error;

/// Errors produced by constructors and operations across the engine.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("variable weight must be positive, got {0}")]
    NonpositiveWeight(i64),
    #[error("expected homogeneous input: {0}")]
    Inhomogeneous(String),
    #[error("variable count mismatch: expected {expected}, got {got}")]
    VariableCountMismatch { expected: usize, got: usize },
    #[error("objects live in different rings")]
    RingMismatch,
    #[error("objects live in different ambient free modules")]
    AmbientMismatch,
    #[error("map is not degree-preserving: {0}")]
    DegreeViolation(String),
    #[error("not a submodule: {0}")]
    NotSubmodule(String),
    #[error("prime candidate is not associated to the module")]
    NotAssociated,
    #[error("no Artin-Rees offset found up to cap {cap} (window {window})")]
    NoArtinReesOffset { cap: usize, window: usize },
    #[error("resolution too short: need homological degree {need}, have {have} (incomplete)")]
    ResolutionTooShort { need: usize, have: usize },
    #[error("empty range")]
    EmptyRange,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
