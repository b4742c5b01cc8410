use thiserror::Error;

/// Errors raised by the exact-arithmetic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("gcd({k}, {n}) != 1")]
    NotCoprime { k: i64, n: u64 },
    #[error("rank-deficient input: rank {rank} < dimension {dim}")]
    RankDeficient { rank: usize, dim: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("conductor mismatch: {left} vs {right}")]
    RingMismatch { left: u64, right: u64 },
    #[error("no uniformizer with coefficients bounded by {bound}")]
    BoundExceeded { bound: u32 },
    #[error("valuation infinite: element is zero")]
    ValuationInfinite,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("degenerate index: i={i}, k={k} mod {order}")]
    DegenerateIndex { i: i64, k: i64, order: u64 },
    #[error("excluded index: i + k = p - 1 ({i} + {k} = {sum})")]
    ExcludedIndex { i: i64, k: i64, sum: i64 },
    #[error("degree mismatch: e*f = {product}, expected {expected}")]
    DegreeMismatch { product: u64, expected: u64 },
    #[error("norm {0} has a cofactor beyond the trial-division limit")]
    TrialDivisionExceeded(String),
    #[error("{element} is not in the monoid")]
    NotInMonoid { element: String },
    #[error("{0} is outside the ideal-prime theory (shares a factor with the modulus)")]
    OutsideTheory(String),
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("enumeration cap {0} exceeded")]
    CapExceeded(u64),
    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
