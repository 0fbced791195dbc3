//! Finite-dimensional associative algebras over GF(p), unital or not.
//!
//! Every algebra is ultimately handled through its structure constants
//! ([`ScAlgebra`]); an algebra given inside a matrix ring ([`MatrixAlgebra`])
//! converts to one and keeps its matrices as a faithful representation.

mod ideal;
mod map;
mod matrix_algebra;
mod quotient;
mod sc;

pub use ideal::{
    centre, corner_subalgebra, corner_subspace, generated_subalgebra, is_left_ideal,
    is_right_ideal, is_two_sided_ideal, nilpotency_index, one_sided_ideal, peirce_space,
    subspace_product, triple_product_space, two_sided_ideal,
};
pub use map::AlgebraMap;
pub use matrix_algebra::{close_under_products, regular_representation, MatrixAlgebra};
pub use quotient::Quotient;
pub use sc::{Representation, ScAlgebra};

use serde::{Deserialize, Serialize};

use crate::linalg::LinalgError;

/// Coordinates of an algebra element with respect to the algebra's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Element(Vec<u32>);

impl Element {
    pub fn new(coords: Vec<u32>) -> Self {
        Self(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl From<Vec<u32>> for Element {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

impl AsRef<[u32]> for Element {
    fn as_ref(&self) -> &[u32] {
        &self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("element has {found} coordinates but the algebra has dimension {expected}")]
    AlgebraMismatch { expected: usize, found: usize },
    #[error("associativity fails on basis triple ({0}, {1}, {2})")]
    AssociativityViolation(usize, usize, usize),
    #[error("product of basis elements {0} and {1} leaves the span")]
    ClosureViolation(usize, usize),
    #[error("structure-constant table has {found} entries, expected {expected}")]
    BadTable { expected: usize, found: usize },
    #[error("algebra has no unity")]
    NotUnital,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
