use crate::linalg::{Matrix, PrimeField, SpanBuilder, Subspace};

use super::{AlgebraError, Representation, ScAlgebra};

/// A subalgebra of `M_n(GF(p))`, held as a subspace of flattened `n x n`
/// matrices in canonical (RREF) form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixAlgebra {
    n: usize,
    span: Subspace,
}

impl MatrixAlgebra {
    /// Wraps a span of matrices, checking closure under products.
    pub fn new(field: PrimeField, n: usize, matrices: &[Matrix]) -> Result<Self, AlgebraError> {
        let span = Subspace::from_vectors(field, n * n, matrices.iter().map(Matrix::data));
        let alg = Self { n, span };
        alg.check_closure()?;
        Ok(alg)
    }

    /// The (not necessarily unital) algebra generated by `generators`.
    pub fn generated_by(field: PrimeField, n: usize, generators: &[Matrix]) -> Self {
        Self {
            n,
            span: close_under_products(field, n, generators),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.span.field()
    }
    pub fn size(&self) -> usize {
        self.n
    }
    pub fn dim(&self) -> usize {
        self.span.dim()
    }
    pub fn span(&self) -> &Subspace {
        &self.span
    }

    pub fn basis(&self) -> Vec<Matrix> {
        self.span
            .basis()
            .iter()
            .map(|v| self.to_matrix(v))
            .collect()
    }

    fn to_matrix(&self, v: &[u32]) -> Matrix {
        Matrix::from_data(self.field(), self.n, self.n, v.to_vec()).expect("n*n entries")
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        m.rows() == self.n && m.cols() == self.n && self.span.contains(m.data())
    }

    /// Coordinates of `m` in the canonical basis.
    pub fn coords(&self, m: &Matrix) -> Option<Vec<u32>> {
        if m.rows() != self.n || m.cols() != self.n {
            return None;
        }
        self.span.coords(m.data())
    }

    pub fn matrix_of(&self, coords: &[u32]) -> Matrix {
        self.to_matrix(&self.span.combine(coords))
    }

    fn check_closure(&self) -> Result<(), AlgebraError> {
        let basis = self.basis();
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                if !self.contains(&x.mul(y)?) {
                    return Err(AlgebraError::ClosureViolation(i, j));
                }
            }
        }
        Ok(())
    }

    /// Structure constants in the canonical basis; the matrices are kept as
    /// a faithful representation.
    pub fn to_sc(&self, origin: Option<String>) -> ScAlgebra {
        let d = self.dim();
        let basis = self.basis();
        let mut table = vec![0u32; d * d * d];
        for i in 0..d {
            for j in 0..d {
                let prod = basis[i].mul(&basis[j]).expect("square");
                let c = self
                    .span
                    .coords(prod.data())
                    .expect("closed under products");
                table[(i * d + j) * d..(i * d + j + 1) * d].copy_from_slice(&c);
            }
        }
        let rep = Representation {
            size: self.n,
            images: basis,
        };
        ScAlgebra::from_parts(self.field(), d, table, Some(rep), origin)
    }
}

/// Linear span of all nonempty products of `generators`.
pub fn close_under_products(field: PrimeField, n: usize, generators: &[Matrix]) -> Subspace {
    let mut span = SpanBuilder::new(field, n * n);
    let mut frontier: Vec<Matrix> = Vec::new();
    for g in generators {
        if span.insert(g.data()) {
            frontier.push(g.clone());
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in generators {
                let prod = x.mul(g).expect("square");
                if span.insert(prod.data()) {
                    next.push(prod);
                }
            }
        }
        frontier = next;
    }
    span.into_subspace()
}

/// Left regular representation. For a non-unital algebra a unit is adjoined,
/// giving matrices of size `dim + 1`.
pub fn regular_representation(alg: &ScAlgebra) -> Representation {
    let d = alg.dim();
    let f = alg.field();
    if alg.is_unital() {
        let images = (0..d)
            .map(|i| alg.left_mult_matrix(alg.basis_element(i).coords()))
            .collect();
        return Representation { size: d, images };
    }
    let images = (0..d)
        .map(|i| {
            let mut m = Matrix::zeros(f, d + 1, d + 1);
            for j in 0..d {
                for (k, &v) in alg.basis_product(i, j).iter().enumerate() {
                    m.set(k, j, v);
                }
            }
            // b_i acting on the adjoined unit.
            m.set(i, d, 1);
            m
        })
        .collect();
    Representation {
        size: d + 1,
        images,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn full_matrix_ring_from_units() {
        let f = gf(7);
        let gens = [Matrix::unit(f, 2, 0, 1), Matrix::unit(f, 2, 1, 0)];
        let a = MatrixAlgebra::generated_by(f, 2, &gens);
        assert_eq!(a.dim(), 4);
        let sc = a.to_sc(None);
        assert!(sc.is_unital());
        assert!(sc.check_associativity().is_ok());
    }

    #[test]
    fn strictly_upper_triangular_is_nilpotent_span() {
        let f = gf(5);
        let gens = [Matrix::unit(f, 3, 0, 1), Matrix::unit(f, 3, 1, 2)];
        let a = MatrixAlgebra::generated_by(f, 3, &gens);
        assert_eq!(a.dim(), 3);
        assert!(!a.to_sc(None).is_unital());
    }

    #[test]
    fn non_closed_span_rejected() {
        let f = gf(5);
        let gens = [Matrix::unit(f, 2, 0, 1), Matrix::unit(f, 2, 1, 0)];
        assert!(matches!(
            MatrixAlgebra::new(f, 2, &gens),
            Err(AlgebraError::ClosureViolation(..))
        ));
    }

    #[test]
    fn regular_representation_is_multiplicative() {
        let f = gf(5);
        let gens = [Matrix::unit(f, 3, 0, 1), Matrix::unit(f, 3, 1, 2)];
        let sc = MatrixAlgebra::generated_by(f, 3, &gens).to_sc(None);
        let rep = regular_representation(&sc);
        assert_eq!(rep.size, 4);
        for i in 0..3 {
            for j in 0..3 {
                let lhs = rep.image_of(sc.basis_product(i, j));
                let rhs = rep.images[i].mul(&rep.images[j]).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
