use super::{LinalgError, Matrix, PrimeField};

/// A coordinate subspace of GF(p)^ambient stored by its reduced row-echelon
/// basis. Two subspaces are equal exactly when their RREF bases coincide.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: PrimeField,
    ambient: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

/// Incrementally maintained reduced echelon basis.
///
/// Every stored row has a 1 at its pivot column and every other stored row is
/// zero there, so reduction against the span is a single pass.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    field: PrimeField,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl SpanBuilder {
    pub fn new(field: PrimeField, ambient: usize) -> Self {
        Self {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_subspace(s: &Subspace) -> Self {
        Self {
            field: s.field,
            ambient: s.ambient,
            rows: s.basis.clone(),
            pivots: s.pivots.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// Normal form of `v` modulo the current span.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        reduce_against(self.field, &self.rows, &self.pivots, v)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns `true` when the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let f = self.field;
        let mut w = self.reduce(v);
        let Some(c) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[c]).expect("nonzero");
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let factor = row[c];
            if factor != 0 {
                axpy(f, row, f.neg(factor), &w);
            }
        }
        self.rows.push(w);
        self.pivots.push(c);
        true
    }

    pub fn into_subspace(self) -> Subspace {
        let mut pairs: Vec<(usize, Vec<u32>)> = self.pivots.into_iter().zip(self.rows).collect();
        pairs.sort_by_key(|(c, _)| *c);
        let (pivots, basis) = pairs.into_iter().unzip();
        Subspace {
            field: self.field,
            ambient: self.ambient,
            basis,
            pivots,
        }
    }
}

/// `y += a * x` over GF(p).
pub(crate) fn axpy(f: PrimeField, y: &mut [u32], a: u32, x: &[u32]) {
    if a == 0 {
        return;
    }
    let p = f.p() as u64;
    for (yi, &xi) in y.iter_mut().zip(x) {
        if xi != 0 {
            *yi = ((*yi as u64 + a as u64 * xi as u64) % p) as u32;
        }
    }
}

fn reduce_against(f: PrimeField, rows: &[Vec<u32>], pivots: &[usize], v: &[u32]) -> Vec<u32> {
    let mut w = v.to_vec();
    for (row, &c) in rows.iter().zip(pivots) {
        let factor = w[c];
        if factor != 0 {
            axpy(f, &mut w, f.neg(factor), row);
        }
    }
    w
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Self {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1 % field.p();
                v
            })
            .collect();
        Self {
            field,
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_vectors<I, V>(field: PrimeField, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[u32]>,
    {
        let mut b = SpanBuilder::new(field, ambient);
        for v in vectors {
            b.insert(v.as_ref());
            if b.is_full() {
                break;
            }
        }
        b.into_subspace()
    }

    /// Row space of a matrix.
    pub fn row_space(m: &Matrix) -> Self {
        Self::from_vectors(m.field(), m.cols(), m.row_vectors())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }
    pub fn basis_vectors(&self) -> Vec<Vec<u32>> {
        self.basis.clone()
    }
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_row_vectors(self.field, self.ambient, &self.basis)
    }

    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        reduce_against(self.field, &self.basis, &self.pivots, v)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        v.len() == self.ambient && self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` with respect to the RREF basis, if `v` lies in the span.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c]).collect())
    }

    /// The vector with the given coordinates in the RREF basis.
    pub fn combine(&self, coords: &[u32]) -> Vec<u32> {
        assert_eq!(coords.len(), self.dim(), "coordinate length mismatch");
        let mut v = vec![0u32; self.ambient];
        for (row, &c) in self.basis.iter().zip(coords) {
            axpy(self.field, &mut v, c, row);
        }
        v
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other)?;
        let mut b = SpanBuilder::from_subspace(self);
        for v in &other.basis {
            b.insert(v);
        }
        Ok(b.into_subspace())
    }

    /// Intersection by the Zassenhaus stacking: reduce the rows `[u | u]` and
    /// `[v | 0]`; rows whose left half vanishes span the intersection.
    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other)?;
        let n = self.ambient;
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for u in &self.basis {
            let mut r = u.clone();
            r.extend_from_slice(u);
            rows.push(r);
        }
        for v in &other.basis {
            let mut r = v.clone();
            r.extend(std::iter::repeat_n(0, n));
            rows.push(r);
        }
        let stacked = Matrix::from_row_vectors(self.field, 2 * n, &rows);
        let rref = stacked.rref();
        let mut out = Vec::new();
        for (r, &c) in rref.pivots.iter().enumerate() {
            if c >= n {
                out.push(rref.matrix.row(r)[n..].to_vec());
            }
        }
        Ok(Self::from_vectors(self.field, n, out))
    }

    /// A complement of `self` inside `within`: the span of the basis vectors
    /// of `within` whose coordinate positions are not pivots of `self`
    /// expressed in `within`-coordinates.
    pub fn complement_within(&self, within: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(within)?;
        let mut local = Vec::with_capacity(self.dim());
        for v in &self.basis {
            local.push(within.coords(v).ok_or(LinalgError::NotContained)?);
        }
        let local = Self::from_vectors(self.field, within.dim(), local);
        let mut is_pivot = vec![false; within.dim()];
        for &c in &local.pivots {
            is_pivot[c] = true;
        }
        let chosen: Vec<Vec<u32>> = (0..within.dim())
            .filter(|&i| !is_pivot[i])
            .map(|i| within.basis[i].clone())
            .collect();
        Ok(Self::from_vectors(self.field, self.ambient, chosen))
    }

    /// Image of the subspace under a linear map given by a matrix acting on
    /// column vectors.
    pub fn image(&self, map: &Matrix) -> Self {
        assert_eq!(map.cols(), self.ambient, "map domain mismatch");
        Self::from_vectors(
            self.field,
            map.rows(),
            self.basis.iter().map(|v| map.mul_vec(v)),
        )
    }

    fn check_ambient(&self, other: &Self) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> Vec<u32> {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    }

    #[test]
    fn sum_and_intersection_match_enumeration() {
        let f = PrimeField::new(3).unwrap();
        let u = Subspace::from_vectors(f, 3, [e(3, 0), e(3, 1)]);
        let v = Subspace::from_vectors(f, 3, [e(3, 1), e(3, 2)]);
        // Enumerate all 27 vectors of GF(3)^3.
        let mut in_both = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let w = vec![a, b, c];
                    if u.contains(&w) && v.contains(&w) {
                        in_both.push(w);
                    }
                }
            }
        }
        assert_eq!(in_both.len(), 3);
        let cap = u.intersect(&v).unwrap();
        assert_eq!(cap, Subspace::from_vectors(f, 3, [e(3, 1)]));
        assert!(in_both.iter().all(|w| cap.contains(w)));
        assert_eq!(u.sum(&v).unwrap(), Subspace::full(f, 3));
    }

    #[test]
    fn idempotent_sum_and_intersection() {
        let f = PrimeField::new(101).unwrap();
        let u = Subspace::from_vectors(f, 4, [vec![1, 2, 3, 4], vec![0, 1, 1, 0]]);
        assert_eq!(u.sum(&u).unwrap(), u);
        assert_eq!(u.intersect(&u).unwrap(), u);
    }

    #[test]
    fn pivot_greedy_complement() {
        let f = PrimeField::new(101).unwrap();
        let u = Subspace::from_vectors(f, 3, [e(3, 0)]);
        let w = Subspace::from_vectors(f, 3, [e(3, 0), e(3, 1)]);
        let c = u.complement_within(&w).unwrap();
        assert_eq!(c, Subspace::from_vectors(f, 3, [e(3, 1)]));
        assert!(u.intersect(&c).unwrap().is_zero());
        assert_eq!(u.sum(&c).unwrap(), w);
        let outside = Subspace::from_vectors(f, 3, [e(3, 2)]);
        assert!(matches!(
            outside.complement_within(&w),
            Err(LinalgError::NotContained)
        ));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let f = PrimeField::new(5).unwrap();
        let u = Subspace::zero(f, 2);
        let v = Subspace::zero(f, 3);
        assert!(matches!(
            u.sum(&v),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn coords_round_trip() {
        let f = PrimeField::new(7).unwrap();
        let u = Subspace::from_vectors(f, 4, [vec![2, 4, 1, 0], vec![1, 0, 0, 3]]);
        let w = u.combine(&[3, 5]);
        assert_eq!(u.coords(&w), Some(vec![3, 5]));
        assert_eq!(u.coords(&[0, 0, 0, 1]), None);
    }
}
