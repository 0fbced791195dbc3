use crate::linalg::{Matrix, PrimeField, Subspace};

use super::{AlgebraError, ScAlgebra};

/// A linear map between algebras, stored as a `target x source` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMap {
    matrix: Matrix,
}

impl AlgebraMap {
    pub fn new(matrix: Matrix) -> Self {
        Self { matrix }
    }

    /// The map sending source basis element `i` to `images[i]`.
    pub fn from_images(field: PrimeField, target_dim: usize, images: Vec<Vec<u32>>) -> Self {
        Self {
            matrix: Matrix::from_column_vectors(field, target_dim, &images),
        }
    }

    /// Builds the map from a closure evaluated on source basis vectors.
    pub fn from_fn(
        field: PrimeField,
        source_dim: usize,
        target_dim: usize,
        mut f: impl FnMut(&[u32]) -> Vec<u32>,
    ) -> Self {
        let images = (0..source_dim)
            .map(|i| {
                let mut e = vec![0u32; source_dim];
                e[i] = 1;
                f(&e)
            })
            .collect();
        Self::from_images(field, target_dim, images)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }
    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }
    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, x: &[u32]) -> Vec<u32> {
        self.matrix.mul_vec(x)
    }

    pub fn image(&self) -> Subspace {
        Subspace::full(self.matrix.field(), self.source_dim()).image(&self.matrix)
    }

    pub fn kernel(&self) -> Subspace {
        self.matrix.kernel()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source_dim()
    }

    pub fn is_bijective(&self) -> bool {
        self.source_dim() == self.target_dim() && self.is_injective()
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &Self) -> Result<Self, AlgebraError> {
        Ok(Self {
            matrix: self.matrix.mul(&first.matrix)?,
        })
    }

    /// Checks `phi(b_i b_j) = phi(b_i) phi(b_j)` on every basis pair.
    pub fn is_multiplicative(&self, source: &ScAlgebra, target: &ScAlgebra) -> bool {
        if source.dim() != self.source_dim() || target.dim() != self.target_dim() {
            return false;
        }
        let images: Vec<Vec<u32>> = (0..source.dim()).map(|i| self.matrix.column(i)).collect();
        for i in 0..source.dim() {
            for j in 0..source.dim() {
                let lhs = self.apply(source.basis_product(i, j));
                let rhs = target.mul_raw(&images[i], &images[j]);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Multiplicative and bijective.
    pub fn is_isomorphism(&self, source: &ScAlgebra, target: &ScAlgebra) -> bool {
        self.is_bijective() && self.is_multiplicative(source, target)
    }
}
