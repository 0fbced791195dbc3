use crate::linalg::{axpy, Matrix, PrimeField, SpanBuilder, Subspace};

use super::{AlgebraError, AlgebraMap, Element};

/// A faithful matrix representation: basis element `i` acts as `images[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub size: usize,
    pub images: Vec<Matrix>,
}

impl Representation {
    pub fn image_of(&self, x: &[u32]) -> Matrix {
        let field = self.images[0].field();
        let mut data = vec![0u32; self.size * self.size];
        for (img, &c) in self.images.iter().zip(x) {
            axpy(field, &mut data, c, img.data());
        }
        Matrix::from_data(field, self.size, self.size, data).expect("square")
    }
}

/// An algebra given by structure constants: `b_i * b_j = sum_k c[i][j][k] b_k`.
#[derive(Clone, Debug)]
pub struct ScAlgebra {
    field: PrimeField,
    dim: usize,
    table: Vec<u32>,
    unity: Option<Element>,
    rep: Option<Representation>,
    origin: Option<String>,
}

impl PartialEq for ScAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.dim == other.dim && self.table == other.table
    }
}

impl ScAlgebra {
    /// Builds an algebra from a structure-constant tensor, checking
    /// associativity on every basis triple and detecting a unity.
    pub fn new(
        field: PrimeField,
        dim: usize,
        table: Vec<u32>,
        origin: Option<String>,
    ) -> Result<Self, AlgebraError> {
        if table.len() != dim * dim * dim {
            return Err(AlgebraError::BadTable {
                expected: dim * dim * dim,
                found: table.len(),
            });
        }
        let p = field.p();
        let table = table.into_iter().map(|x| x % p).collect();
        let alg = Self::from_parts(field, dim, table, None, origin);
        alg.check_associativity()?;
        Ok(alg)
    }

    /// Internal constructor for tables that are associative by construction.
    pub(crate) fn from_parts(
        field: PrimeField,
        dim: usize,
        table: Vec<u32>,
        rep: Option<Representation>,
        origin: Option<String>,
    ) -> Self {
        let mut alg = Self {
            field,
            dim,
            table,
            unity: None,
            rep,
            origin,
        };
        alg.unity = alg.detect_unity().map(Element::new);
        alg
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn unity(&self) -> Option<&Element> {
        self.unity.as_ref()
    }
    pub fn is_unital(&self) -> bool {
        self.unity.is_some()
    }
    pub fn origin(&self) -> Option<&str> {
        self.origin.as_deref()
    }
    pub fn representation(&self) -> Option<&Representation> {
        self.rep.as_ref()
    }
    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn with_origin(mut self, origin: impl Into<String>) -> Self {
        self.origin = Some(origin.into());
        self
    }

    /// Coordinates of `b_i * b_j`.
    #[inline]
    pub fn basis_product(&self, i: usize, j: usize) -> &[u32] {
        let d = self.dim;
        &self.table[(i * d + j) * d..(i * d + j + 1) * d]
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut v = vec![0; self.dim];
        v[i] = 1 % self.field.p();
        Element::new(v)
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.dim)
    }

    pub fn check(&self, x: &Element) -> Result<(), AlgebraError> {
        if x.dim() != self.dim {
            return Err(AlgebraError::AlgebraMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        Ok(())
    }

    pub fn unity_or_err(&self) -> Result<&Element, AlgebraError> {
        self.unity.as_ref().ok_or(AlgebraError::NotUnital)
    }

    /// Bilinear product on raw coordinate slices.
    pub fn mul_raw(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let d = self.dim;
        let p = self.field.p() as u64;
        let mut acc = vec![0u64; d];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = (xi as u64 * yj as u64) % p;
                let row = &self.table[(i * d + j) * d..(i * d + j + 1) * d];
                for (slot, &r) in acc.iter_mut().zip(row) {
                    *slot += c * r as u64;
                }
            }
        }
        acc.into_iter().map(|s| (s % p) as u32).collect()
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        self.check(x)?;
        self.check(y)?;
        Ok(Element::new(self.mul_raw(x.coords(), y.coords())))
    }

    /// `x * y * z`.
    pub fn mul3(&self, x: &[u32], y: &[u32], z: &[u32]) -> Vec<u32> {
        self.mul_raw(&self.mul_raw(x, y), z)
    }

    /// `x^k`; `k = 0` requires a unity.
    pub fn power(&self, x: &Element, k: u64) -> Result<Element, AlgebraError> {
        self.check(x)?;
        if k == 0 {
            return self.unity_or_err().cloned();
        }
        Ok(Element::new(self.pow_raw(x.coords(), k)))
    }

    pub(crate) fn pow_raw(&self, x: &[u32], k: u64) -> Vec<u32> {
        debug_assert!(k >= 1);
        let mut base = x.to_vec();
        let mut acc: Option<Vec<u32>> = None;
        let mut e = k;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => self.mul_raw(&a, &base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = self.mul_raw(&base, &base);
        }
        acc.expect("k >= 1")
    }

    pub fn add(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        x.iter()
            .zip(y)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect()
    }

    pub fn sub(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        x.iter()
            .zip(y)
            .map(|(&a, &b)| self.field.sub(a, b))
            .collect()
    }

    pub fn scale(&self, c: u32, x: &[u32]) -> Vec<u32> {
        x.iter().map(|&a| self.field.mul(c, a)).collect()
    }

    /// Matrix of `y -> x * y` acting on coordinate columns.
    pub fn left_mult_matrix(&self, x: &[u32]) -> Matrix {
        let d = self.dim;
        let mut m = Matrix::zeros(self.field, d, d);
        for j in 0..d {
            let col = self.mul_basis_right(x, j);
            for (k, &v) in col.iter().enumerate() {
                m.set(k, j, v);
            }
        }
        m
    }

    /// Matrix of `y -> y * x` acting on coordinate columns.
    pub fn right_mult_matrix(&self, x: &[u32]) -> Matrix {
        let d = self.dim;
        let mut m = Matrix::zeros(self.field, d, d);
        for j in 0..d {
            let col = self.mul_basis_left(j, x);
            for (k, &v) in col.iter().enumerate() {
                m.set(k, j, v);
            }
        }
        m
    }

    /// `x * b_j`.
    pub fn mul_basis_right(&self, x: &[u32], j: usize) -> Vec<u32> {
        let mut out = vec![0u32; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            axpy(self.field, &mut out, xi, self.basis_product(i, j));
        }
        out
    }

    /// `b_i * x`.
    pub fn mul_basis_left(&self, i: usize, x: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.dim];
        for (j, &xj) in x.iter().enumerate() {
            axpy(self.field, &mut out, xj, self.basis_product(i, j));
        }
        out
    }

    pub fn check_associativity(&self) -> Result<(), AlgebraError> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                let bij = self.basis_product(i, j).to_vec();
                for k in 0..d {
                    let lhs = self.mul_basis_right(&bij, k);
                    let bjk = self.basis_product(j, k);
                    let rhs = self.mul_basis_left(i, bjk);
                    if lhs != rhs {
                        return Err(AlgebraError::AssociativityViolation(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// Solves `u b_i = b_i = b_i u` for all `i`.
    fn detect_unity(&self) -> Option<Vec<u32>> {
        let d = self.dim;
        // The zero algebra is unital with 1 = 0.
        if d == 0 {
            return Some(Vec::new());
        }
        let f = self.field;
        let one = 1 % f.p();
        // Rows of the augmented system [coefficients of u | rhs].
        let mut span = SpanBuilder::new(f, d + 1);
        let mut row = vec![0u32; d + 1];
        'outer: for i in 0..d {
            for l in 0..d {
                for side in 0..2 {
                    for (k, slot) in row[..d].iter_mut().enumerate() {
                        *slot = if side == 0 {
                            self.basis_product(k, i)[l]
                        } else {
                            self.basis_product(i, k)[l]
                        };
                    }
                    row[d] = if i == l { one } else { 0 };
                    span.insert(&row);
                    if span.dim() == d + 1 {
                        return None;
                    }
                    if span.dim() == d {
                        break 'outer;
                    }
                }
            }
        }
        let sub = span.into_subspace();
        // Solutions are exactly the unities, which are unique, so a consistent
        // system has full rank.
        if sub.dim() < d || sub.pivots().last() == Some(&d) {
            return None;
        }
        let mut u = vec![0u32; d];
        for (r, &c) in sub.pivots().iter().enumerate() {
            u[c] = sub.basis()[r][d];
        }
        self.is_unity(&u).then_some(u)
    }

    pub fn is_unity(&self, u: &[u32]) -> bool {
        (0..self.dim).all(|i| {
            let bi = self.basis_element(i);
            self.mul_basis_right(u, i) == bi.coords() && self.mul_basis_left(i, u) == bi.coords()
        })
    }

    /// Two-sided inverse in a unital algebra.
    pub fn inverse(&self, x: &[u32]) -> Option<Vec<u32>> {
        let unity = self.unity.as_ref()?;
        let lm = self.left_mult_matrix(x);
        let y = lm.solve(unity.coords())?;
        (self.mul_raw(&y, x) == unity.coords()).then_some(y)
    }

    pub fn is_invertible(&self, x: &[u32]) -> bool {
        self.unity.is_some() && self.left_mult_matrix(x).rank() == self.dim
    }

    pub fn is_idempotent(&self, x: &[u32]) -> bool {
        self.mul_raw(x, x) == x
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| (0..d).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    pub fn has_trivial_multiplication(&self) -> bool {
        self.table.iter().all(|&x| x == 0)
    }

    /// The opposite algebra, `x *op y = y * x`.
    pub fn opposite(&self) -> Self {
        let d = self.dim;
        let mut table = vec![0u32; d * d * d];
        for i in 0..d {
            for j in 0..d {
                table[(i * d + j) * d..(i * d + j + 1) * d]
                    .copy_from_slice(self.basis_product(j, i));
            }
        }
        let rep = self.rep.as_ref().map(|r| Representation {
            size: r.size,
            images: r.images.iter().map(Matrix::transpose).collect(),
        });
        Self::from_parts(
            self.field,
            d,
            table,
            rep,
            Some(format!("opposite of {}", self.describe())),
        )
    }

    /// The deformed algebra with product `x *_s y = x s y` on the same space.
    pub fn deform(&self, s: &Element) -> Result<Self, AlgebraError> {
        self.check(s)?;
        let d = self.dim;
        let mut table = vec![0u32; d * d * d];
        for i in 0..d {
            let bis = self.mul_basis_left(i, s.coords());
            for j in 0..d {
                let v = self.mul_basis_right(&bis, j);
                table[(i * d + j) * d..(i * d + j + 1) * d].copy_from_slice(&v);
            }
        }
        Ok(Self::from_parts(
            self.field,
            d,
            table,
            None,
            Some(format!("deformation of {}", self.describe())),
        ))
    }

    /// The subalgebra spanned by `span`, with structure constants in the
    /// coordinates of its RREF basis, plus the inclusion map.
    pub fn subalgebra(&self, span: &Subspace) -> Result<(Self, AlgebraMap), AlgebraError> {
        if span.ambient_dim() != self.dim {
            return Err(AlgebraError::AlgebraMismatch {
                expected: self.dim,
                found: span.ambient_dim(),
            });
        }
        let k = span.dim();
        let basis = span.basis();
        let mut table = vec![0u32; k * k * k];
        for i in 0..k {
            for j in 0..k {
                let prod = self.mul_raw(&basis[i], &basis[j]);
                let c = span
                    .coords(&prod)
                    .ok_or(AlgebraError::ClosureViolation(i, j))?;
                table[(i * k + j) * k..(i * k + j + 1) * k].copy_from_slice(&c);
            }
        }
        let rep = self.rep.as_ref().map(|r| Representation {
            size: r.size,
            images: basis.iter().map(|v| r.image_of(v)).collect(),
        });
        let sub = Self::from_parts(self.field, k, table, rep, None);
        let inclusion = AlgebraMap::from_images(self.field, self.dim, basis.to_vec());
        Ok((sub, inclusion))
    }

    pub fn describe(&self) -> String {
        match &self.origin {
            Some(o) => o.clone(),
            None => format!(
                "{}-dimensional algebra over GF({})",
                self.dim,
                self.field.p()
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn t2_table() -> Vec<u32> {
        // basis E11, E12, E22
        let d = 3;
        let mut t = vec![0u32; d * d * d];
        let mut set = |i: usize, j: usize, k: usize| t[(i * d + j) * d + k] = 1;
        set(0, 0, 0); // E11 E11 = E11
        set(0, 1, 1); // E11 E12 = E12
        set(1, 2, 1); // E12 E22 = E12
        set(2, 2, 2); // E22 E22 = E22
        t
    }

    #[test]
    fn triangular_algebra_has_unity() {
        let a = ScAlgebra::new(gf(101), 3, t2_table(), None).unwrap();
        assert_eq!(a.unity().unwrap().coords(), &[1, 0, 1]);
        let e12 = a.basis_element(1);
        assert!(a.multiply(&e12, &e12).unwrap().is_zero());
    }

    #[test]
    fn non_associative_table_rejected() {
        // b0 * b0 = b1, b1 * b0 = b0, everything else zero:
        // (b0 b0) b0 = b1 b0 = b0 but b0 (b0 b0) = b0 b1 = 0.
        // Entry (i * 2 + j) * 2 + k is the b_k coefficient of b_i b_j.
        let mut t = vec![0u32; 8];
        t[1] = 1;
        t[4] = 1;
        assert!(matches!(
            ScAlgebra::new(gf(7), 2, t, None),
            Err(AlgebraError::AssociativityViolation(..))
        ));
    }

    #[test]
    fn deformation_by_unity_is_identity() {
        let a = ScAlgebra::new(gf(101), 3, t2_table(), None).unwrap();
        let u = a.unity().unwrap().clone();
        let b = a.deform(&u).unwrap();
        assert_eq!(a.table(), b.table());
    }

    #[test]
    fn deformation_by_zero_is_trivial() {
        let a = ScAlgebra::new(gf(101), 3, t2_table(), None).unwrap();
        let b = a.deform(&a.zero()).unwrap();
        assert!(b.has_trivial_multiplication());
        assert!(!b.is_unital());
    }

    #[test]
    fn mismatched_element_rejected() {
        let a = ScAlgebra::new(gf(5), 3, t2_table(), None).unwrap();
        let x = Element::zero(2);
        assert!(matches!(
            a.multiply(&x, &x),
            Err(AlgebraError::AlgebraMismatch {
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn zero_power_needs_unity() {
        let a = ScAlgebra::new(gf(5), 1, vec![0], None).unwrap();
        assert!(matches!(
            a.power(&a.basis_element(0), 0),
            Err(AlgebraError::NotUnital)
        ));
        assert!(a.power(&a.basis_element(0), 2).unwrap().is_zero());
    }
}
