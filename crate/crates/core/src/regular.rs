//! Regular and unit-regular elements.

use serde::Serialize;

use crate::algebra::ScAlgebra;
use crate::context::Ctx;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::radical::for_each_vector;

/// Random draws before falling back to an exhaustive scan.
pub const SAMPLE_ATTEMPTS: usize = 256;

/// `a b a = a`, with the idempotents `e = ab` and `g = ba`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularCertificate {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub e: Vec<u32>,
    pub g: Vec<u32>,
}

impl RegularCertificate {
    pub fn verify(&self, alg: &ScAlgebra) -> bool {
        alg.mul3(&self.a, &self.b, &self.a) == self.a
            && alg.mul_raw(&self.a, &self.b) == self.e
            && alg.mul_raw(&self.b, &self.a) == self.g
            && alg.is_idempotent(&self.e)
            && alg.is_idempotent(&self.g)
    }
}

/// `a = e u` with `e` idempotent and `u` invertible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitRegularCertificate {
    pub a: Vec<u32>,
    pub e: Vec<u32>,
    pub u: Vec<u32>,
    pub u_inv: Vec<u32>,
}

impl UnitRegularCertificate {
    pub fn verify(&self, alg: &ScAlgebra) -> bool {
        let Some(one) = alg.unity() else {
            return false;
        };
        alg.is_idempotent(&self.e)
            && alg.mul_raw(&self.u, &self.u_inv) == one.coords()
            && alg.mul_raw(&self.u_inv, &self.u) == one.coords()
            && alg.mul_raw(&self.e, &self.u) == self.a
            && alg.mul3(&self.a, &self.u_inv, &self.a) == self.a
    }
}

/// Matrix of `x -> a x a`.
fn sandwich_matrix(alg: &ScAlgebra, a: &[u32]) -> Matrix {
    let cols: Vec<Vec<u32>> = (0..alg.dim())
        .map(|i| alg.mul_raw(&alg.mul_basis_right(a, i), a))
        .collect();
    Matrix::from_column_vectors(alg.field(), alg.dim(), &cols)
}

pub fn inner_inverse(alg: &ScAlgebra, a: &[u32]) -> Result<RegularCertificate> {
    alg.unity_or_err()?;
    alg.check(&a.to_vec().into())?;
    let b = sandwich_matrix(alg, a)
        .solve(a)
        .ok_or_else(|| Error::NotRegular("element".into()))?;
    let cert = RegularCertificate {
        a: a.to_vec(),
        e: alg.mul_raw(a, &b),
        g: alg.mul_raw(&b, a),
        b,
    };
    debug_assert!(cert.verify(alg));
    Ok(cert)
}

/// Finds an invertible `v` with `a v a = a`, then returns `e = a v`,
/// `u = v^-1`, so that `e u = a`.
pub fn unit_regular_factorization(
    alg: &ScAlgebra,
    a: &[u32],
    ctx: &mut Ctx,
) -> Result<UnitRegularCertificate> {
    let cert = inner_inverse(alg, a)?;
    let kernel = sandwich_matrix(alg, a).kernel();
    let v = find_invertible(alg, a, &cert.b, &kernel, ctx)?;
    let u = alg.inverse(&v).expect("checked invertible");
    let out = UnitRegularCertificate {
        a: a.to_vec(),
        e: alg.mul_raw(a, &v),
        u,
        u_inv: v,
    };
    if !out.verify(alg) {
        return Err(Error::InternalInconsistency(
            "unit-regular certificate failed verification".into(),
        ));
    }
    Ok(out)
}

fn find_invertible(
    alg: &ScAlgebra,
    a: &[u32],
    particular: &[u32],
    kernel: &Subspace,
    ctx: &mut Ctx,
) -> Result<Vec<u32>> {
    let one = alg.unity_or_err()?.coords().to_vec();
    if alg.mul3(a, &one, a) == a {
        return Ok(one);
    }
    if alg.is_invertible(particular) {
        return Ok(particular.to_vec());
    }
    if kernel.is_zero() {
        return Err(Error::NotUnitRegular);
    }
    for _ in 0..SAMPLE_ATTEMPTS {
        let v = alg.add(particular, &ctx.random_in(kernel));
        if alg.is_invertible(&v) {
            return Ok(v);
        }
    }
    let p = alg.field().p();
    let points = (p as u128)
        .checked_pow(kernel.dim() as u32)
        .unwrap_or(u128::MAX);
    if points > ctx.brute_cap {
        return Err(Error::RetriesExhausted(SAMPLE_ATTEMPTS));
    }
    let mut found = None;
    for_each_vector(p, kernel.dim(), |c| {
        let v = alg.add(particular, &kernel.combine(c));
        if alg.is_invertible(&v) {
            found = Some(v);
            return false;
        }
        true
    });
    found.ok_or(Error::NotUnitRegular)
}

/// `b, c` with `a = a^2 b = c a^2`.
pub fn square_witnesses(alg: &ScAlgebra, a: &[u32]) -> Result<(Vec<u32>, Vec<u32>)> {
    alg.unity_or_err()?;
    alg.check(&a.to_vec().into())?;
    let a2 = alg.mul_raw(a, a);
    let b = alg.left_mult_matrix(&a2).solve(a).ok_or(Error::NoWitness)?;
    let c = alg
        .right_mult_matrix(&a2)
        .solve(a)
        .ok_or(Error::NoWitness)?;
    Ok((b, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MatrixAlgebra;
    use crate::linalg::PrimeField;

    fn units(p: u32, n: usize, pairs: &[(usize, usize)]) -> ScAlgebra {
        let f = PrimeField::new(p).unwrap();
        let gens: Vec<Matrix> = pairs
            .iter()
            .map(|&(i, j)| Matrix::unit(f, n, i, j))
            .collect();
        MatrixAlgebra::new(f, n, &gens).unwrap().to_sc(None)
    }

    fn full(p: u32, n: usize) -> ScAlgebra {
        let pairs: Vec<_> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        units(p, n, &pairs)
    }

    fn unit_vec(d: usize, i: usize) -> Vec<u32> {
        let mut v = vec![0; d];
        v[i] = 1;
        v
    }

    #[test]
    fn inner_inverse_examples() {
        // M_2 canonical basis: E11, E12, E21, E22
        let m2 = full(101, 2);
        let e12 = unit_vec(4, 1);
        let cert = inner_inverse(&m2, &e12).unwrap();
        assert!(cert.verify(&m2));
        assert_eq!(cert.b[2], 1, "E21 coefficient");
        let t2 = units(101, 2, &[(0, 0), (0, 1), (1, 1)]);
        assert!(matches!(
            inner_inverse(&t2, &unit_vec(3, 1)),
            Err(Error::NotRegular(_))
        ));
    }

    #[test]
    fn unit_regular_examples() {
        let m2 = full(101, 2);
        let mut ctx = Ctx::new(5);
        let e11 = unit_vec(4, 0);
        let c = unit_regular_factorization(&m2, &e11, &mut ctx).unwrap();
        assert_eq!(c.e, e11);
        assert_eq!(&c.u, m2.unity().unwrap().coords());
        // An invertible element: E12 + E21.
        let s = m2.add(&unit_vec(4, 1), &unit_vec(4, 2));
        let c = unit_regular_factorization(&m2, &s, &mut ctx).unwrap();
        assert_eq!(&c.e, m2.unity().unwrap().coords());
        assert_eq!(c.u, s);
        let m3 = full(101, 3);
        // E11 + E23 in the basis E11..E33
        let a = m3.add(&unit_vec(9, 0), &unit_vec(9, 5));
        let c = unit_regular_factorization(&m3, &a, &mut ctx).unwrap();
        assert!(c.verify(&m3));
    }

    #[test]
    fn square_witness_examples() {
        let m2 = full(101, 2);
        let e11 = unit_vec(4, 0);
        let (b, c) = square_witnesses(&m2, &e11).unwrap();
        assert_eq!(m2.mul3(&e11, &e11, &b), e11);
        assert_eq!(m2.mul3(&c, &e11, &e11), e11);
        assert!(matches!(
            square_witnesses(&m2, &unit_vec(4, 1)),
            Err(Error::NoWitness)
        ));
    }
}
