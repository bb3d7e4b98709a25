use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: u32, degree: usize },

    #[error("images do not form a bijection of 0..{0}")]
    NotBijection(usize),

    #[error("group is not transitive")]
    Intransitive,

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("matrix is not invertible mod {0}")]
    NotInvertible(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("domain too large: {0}")]
    DomainTooLarge(String),

    #[error("budget exhausted: {0}")]
    Budget(String),

    #[error("tuple is not admissible: {0}")]
    Inadmissible(String),

    #[error("no admissible seed tuple exists for {0}")]
    NoSeed(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("cache format error: {0}")]
    CacheFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
