//! Error type shared by all modules.

/// Errors reported by field construction, code construction, and the
/// determinant machinery.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus must be monic of degree {expected}")]
    ModulusShape { expected: u32 },
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u64 },
    #[error("field order p^m does not fit in 64 bits")]
    FieldTooLarge,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("requested {count} elements but the field has only {q}")]
    EnumerationOverflow { count: u64, q: u64 },
    #[error("evaluation points must be pairwise distinct")]
    RepeatedPoints,
    #[error("multiplier entries must be nonzero")]
    ZeroMultiplier,
    #[error("parameter out of range: {0}")]
    ParamRange(String),
    #[error("polynomial degree {deg} exceeds the bound t-1 = {bound}")]
    DegreeTooLarge { deg: usize, bound: usize },
    #[error("degenerate code: generator rank {rank} < dimension {t}")]
    DegenerateSpec { rank: usize, t: usize },
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("linear system is singular")]
    SingularSystem,
    #[error("generator matrix is rank-deficient")]
    RankDeficient,
    #[error("Cauchy matrix has x[{i}] + y[{j}] = 0")]
    CauchyZeroDenominator { i: usize, j: usize },
    #[error("closed-form determinant is not an integer")]
    InexactDivision,
    #[error("malformed matrix file: {0}")]
    MatrixFile(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
