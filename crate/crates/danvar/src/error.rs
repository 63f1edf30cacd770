//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("negative exponent on {var} is not allowed in this ring")]
    NegativeExponent { var: String },

    #[error("variable {var} is not part of this ring")]
    UnknownVariable { var: String },

    #[error("ring context mismatch: {0}")]
    ContextMismatch(String),

    #[error("zero polynomial rejected: {0}")]
    ZeroInput(&'static str),

    #[error("divisor is not monic in y")]
    NonMonicDivisor,

    #[error("weight vector does not cover variable {var}")]
    UncoveredVariable { var: String },

    #[error("invalid hypersurface data: {0}")]
    InvalidHypersurface(String),

    #[error("sigma family violates condition ({condition}): {detail}")]
    SigmaInvariant { condition: u8, detail: String },

    #[error("hypersurface has no sigma family attached")]
    NoSigmaFamily,

    #[error("cocycle identity fails on triple ({i},{j},{k})")]
    CocycleIdentity { i: usize, j: usize, k: usize },

    #[error("invalid cocycle data: {0}")]
    InvalidCocycle(String),

    #[error("cocycles live over different base schemes")]
    BaseMismatch,

    #[error("operation requires an affine cocycle, got a non-separated one")]
    NotAffine,

    #[error("derivation does not preserve the defining ideal: {0}")]
    IdealNotPreserved(String),

    #[error("iteration cap {cap} exceeded while iterating the derivation on {what}")]
    IterationCap { cap: u32, what: String },

    #[error("a nontrivial derivation is required")]
    TrivialDerivation,

    #[error("weight seed is degenerate: {0}")]
    DegenerateWeights(String),

    #[error("graded derivation does not preserve the homogenized relation: {0}")]
    RelationNotPreserved(String),

    #[error("search space of size {size} exceeds the configured bound {bound}")]
    SearchSpaceOverflow { size: u128, bound: u128 },

    #[error("derivation catalog is empty")]
    EmptyCatalog,

    #[error("action axiom failed: {0}")]
    AxiomFailure(String),

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("invalid job file: {0}")]
    InvalidJob(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
