use crate::algebra::AlgebraError;
use crate::linalg::LinalgError;

/// Failures of the structure-theory operations. Variants that describe an
/// unmet mathematical hypothesis name it in the message.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("characteristic {p} too small: the trace-form radical needs p > {needed}")]
    CharacteristicTooSmall { p: u32, needed: usize },
    #[error("search space of {size} elements exceeds the cap {cap}")]
    SearchSpaceTooLarge { size: u128, cap: u128 },
    #[error("algebra is not semisimple: its Jacobson radical has dimension {0}")]
    NotSemisimple(usize),
    #[error("algebra is not semiprime: its Jacobson radical is nonzero")]
    NotSemiprime,
    #[error("corner eAe is not semisimple")]
    CornerNotSemisimple,
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("element is not idempotent modulo the given nilpotent ideal")]
    NotAlmostIdempotent,
    #[error("subspace is not a right ideal")]
    NotARightIdeal,
    #[error("{0} is not regular: a x a = a has no solution")]
    NotRegular(String),
    #[error("given b is not an inner inverse: a b a != a")]
    NotRegularWitness,
    #[error("element is not unit-regular: no invertible v with a v a = a exists")]
    NotUnitRegular,
    #[error("no b, c with a = a^2 b = c a^2")]
    NoWitness,
    #[error("{0} has infinite rank: it lies outside the socle")]
    InfiniteRank(String),
    #[error("a^2 has infinite right rank (a^2 lies outside the right socle); the decomposition needs rank a^2 finite")]
    InfiniteSquareRank,
    #[error("module length is not integral: {0}")]
    NonIntegralLength(String),
    #[error("randomized search gave up after {0} attempts")]
    RetriesExhausted(usize),
    #[error("unknown suite `{name}`; available: all, {available}")]
    UnknownSuite { name: String, available: String },
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
