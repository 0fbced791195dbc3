use crate::linalg::Subspace;

use super::{AlgebraError, ScAlgebra};

/// `A / I` for a two-sided ideal `I`. The quotient basis is the image of the
/// standard basis vectors at the non-pivot positions of `I`, so projection is
/// "reduce modulo `I`, then read those coordinates".
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: ScAlgebra,
    pub ideal: Subspace,
    pub free: Vec<usize>,
}

impl Quotient {
    pub fn new(alg: &ScAlgebra, ideal: &Subspace) -> Result<Self, AlgebraError> {
        if ideal.ambient_dim() != alg.dim() {
            return Err(AlgebraError::AlgebraMismatch {
                expected: alg.dim(),
                found: ideal.ambient_dim(),
            });
        }
        if !super::is_two_sided_ideal(alg, ideal) {
            return Err(AlgebraError::NotAnIdeal);
        }
        let mut is_pivot = vec![false; alg.dim()];
        for &c in ideal.pivots() {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..alg.dim()).filter(|&i| !is_pivot[i]).collect();
        let q = free.len();
        let mut table = vec![0u32; q * q * q];
        for (a, &i) in free.iter().enumerate() {
            for (b, &j) in free.iter().enumerate() {
                let r = ideal.reduce(alg.basis_product(i, j));
                for (c, &k) in free.iter().enumerate() {
                    table[(a * q + b) * q + c] = r[k];
                }
            }
        }
        let algebra = ScAlgebra::from_parts(
            alg.field(),
            q,
            table,
            None,
            Some(format!("quotient of {}", alg.describe())),
        );
        Ok(Self {
            algebra,
            ideal: ideal.clone(),
            free,
        })
    }

    pub fn project(&self, x: &[u32]) -> Vec<u32> {
        let r = self.ideal.reduce(x);
        self.free.iter().map(|&k| r[k]).collect()
    }

    /// A preimage of `y`.
    pub fn lift(&self, y: &[u32]) -> Vec<u32> {
        let mut x = vec![0u32; self.ideal.ambient_dim()];
        for (&k, &v) in self.free.iter().zip(y) {
            x[k] = v;
        }
        x
    }

    /// Preimage of a subspace of the quotient, including the ideal.
    pub fn preimage(&self, s: &Subspace) -> Subspace {
        let lifted = Subspace::from_vectors(
            self.ideal.field(),
            self.ideal.ambient_dim(),
            s.basis().iter().map(|v| self.lift(v)),
        );
        lifted.sum(&self.ideal).expect("same ambient")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MatrixAlgebra;
    use crate::linalg::{Matrix, PrimeField};

    #[test]
    fn triangular_mod_strict_is_diagonal() {
        let f = PrimeField::new(13).unwrap();
        let gens = [
            Matrix::unit(f, 2, 0, 0),
            Matrix::unit(f, 2, 0, 1),
            Matrix::unit(f, 2, 1, 1),
        ];
        let a = MatrixAlgebra::new(f, 2, &gens).unwrap().to_sc(None);
        // canonical basis order: E11, E12, E22
        let j = Subspace::from_vectors(f, 3, [[0u32, 1, 0]]);
        let q = Quotient::new(&a, &j).unwrap();
        assert_eq!(q.algebra.dim(), 2);
        assert!(q.algebra.is_commutative());
        assert_eq!(
            q.project(a.unity().unwrap().coords()),
            q.algebra.unity().unwrap().coords()
        );
        let x = [3u32, 5, 7];
        assert_eq!(q.project(&q.lift(&q.project(&x))), q.project(&x));
    }

    #[test]
    fn non_ideal_rejected() {
        let f = PrimeField::new(13).unwrap();
        let gens = [
            Matrix::unit(f, 2, 0, 0),
            Matrix::unit(f, 2, 0, 1),
            Matrix::unit(f, 2, 1, 1),
        ];
        let a = MatrixAlgebra::new(f, 2, &gens).unwrap().to_sc(None);
        let s = Subspace::from_vectors(f, 3, [[1u32, 0, 0]]);
        assert!(matches!(
            Quotient::new(&a, &s),
            Err(AlgebraError::NotAnIdeal)
        ));
    }
}
