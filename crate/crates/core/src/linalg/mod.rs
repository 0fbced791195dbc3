//! Exact dense linear algebra over prime fields.

mod field;
mod matrix;
mod subspace;

pub use field::{is_prime, PrimeField, MAX_MODULUS};
pub use matrix::{Matrix, Rref};
pub use subspace::{SpanBuilder, Subspace};

pub(crate) use subspace::axpy;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspace is not contained in the enclosing subspace")]
    NotContained,
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus {0} out of range (must be below {MAX_MODULUS})")]
    ModulusOutOfRange(u32),
}
