use crate::linalg::{Matrix, SpanBuilder, Subspace};

use super::{AlgebraError, AlgebraMap, ScAlgebra, Side};

fn check(alg: &ScAlgebra, s: &Subspace) -> Result<(), AlgebraError> {
    if s.ambient_dim() != alg.dim() {
        return Err(AlgebraError::AlgebraMismatch {
            expected: alg.dim(),
            found: s.ambient_dim(),
        });
    }
    Ok(())
}

fn check_elem(alg: &ScAlgebra, x: &[u32]) -> Result<(), AlgebraError> {
    if x.len() != alg.dim() {
        return Err(AlgebraError::AlgebraMismatch {
            expected: alg.dim(),
            found: x.len(),
        });
    }
    Ok(())
}

/// `span{u v : u in U, v in V}`.
pub fn subspace_product(
    alg: &ScAlgebra,
    u: &Subspace,
    v: &Subspace,
) -> Result<Subspace, AlgebraError> {
    check(alg, u)?;
    check(alg, v)?;
    let mut b = SpanBuilder::new(alg.field(), alg.dim());
    for x in u.basis() {
        for y in v.basis() {
            b.insert(&alg.mul_raw(x, y));
            if b.is_full() {
                return Ok(b.into_subspace());
            }
        }
    }
    Ok(b.into_subspace())
}

/// `span{u v w}`.
pub fn triple_product_space(
    alg: &ScAlgebra,
    u: &Subspace,
    v: &Subspace,
    w: &Subspace,
) -> Result<Subspace, AlgebraError> {
    let uv = subspace_product(alg, u, v)?;
    subspace_product(alg, &uv, w)
}

/// `span{s b_j}` (right) or `span{b_j s}` (left) over a basis of `s`.
fn times_algebra(alg: &ScAlgebra, s: &Subspace, side: Side) -> Subspace {
    let mut b = SpanBuilder::new(alg.field(), alg.dim());
    for x in s.basis() {
        for j in 0..alg.dim() {
            let y = match side {
                Side::Right => alg.mul_basis_right(x, j),
                Side::Left => alg.mul_basis_left(j, x),
            };
            b.insert(&y);
            if b.is_full() {
                return b.into_subspace();
            }
        }
    }
    b.into_subspace()
}

/// Smallest right (or left) ideal containing `gens`: `G + GA` (or `G + AG`).
pub fn one_sided_ideal(
    alg: &ScAlgebra,
    gens: &Subspace,
    side: Side,
) -> Result<Subspace, AlgebraError> {
    check(alg, gens)?;
    Ok(gens.sum(&times_algebra(alg, gens, side))?)
}

/// Smallest two-sided ideal containing `gens`: `G + AG + GA + AGA`.
pub fn two_sided_ideal(alg: &ScAlgebra, gens: &Subspace) -> Result<Subspace, AlgebraError> {
    check(alg, gens)?;
    let right = one_sided_ideal(alg, gens, Side::Right)?;
    one_sided_ideal(alg, &right, Side::Left)
}

pub fn is_right_ideal(alg: &ScAlgebra, s: &Subspace) -> bool {
    s.ambient_dim() == alg.dim() && times_algebra(alg, s, Side::Right).is_subspace_of(s)
}

pub fn is_left_ideal(alg: &ScAlgebra, s: &Subspace) -> bool {
    s.ambient_dim() == alg.dim() && times_algebra(alg, s, Side::Left).is_subspace_of(s)
}

pub fn is_two_sided_ideal(alg: &ScAlgebra, s: &Subspace) -> bool {
    is_left_ideal(alg, s) && is_right_ideal(alg, s)
}

/// Least `k >= 1` with `S^k = 0`, or `None` if the powers stabilise above zero.
pub fn nilpotency_index(alg: &ScAlgebra, s: &Subspace) -> Result<Option<usize>, AlgebraError> {
    check(alg, s)?;
    if s.is_zero() {
        return Ok(Some(1));
    }
    let mut power = s.clone();
    let mut k = 1;
    loop {
        let next = subspace_product(alg, &power, s)?;
        k += 1;
        if next.is_zero() {
            return Ok(Some(k));
        }
        // S^k lies in the k-th power of the subalgebra S generates, which is
        // zero for k > dim A when that subalgebra is nilpotent.
        if next == power || k > alg.dim() {
            return Ok(None);
        }
        power = next;
    }
}

/// `{z : z b_i = b_i z for all i}`.
pub fn centre(alg: &ScAlgebra) -> Subspace {
    let d = alg.dim();
    let f = alg.field();
    // Row (i, k) of the system: coefficient of z_j is (b_j b_i - b_i b_j)_k.
    let mut rows = Vec::with_capacity(d * d);
    for i in 0..d {
        for k in 0..d {
            let row: Vec<u32> = (0..d)
                .map(|j| f.sub(alg.basis_product(j, i)[k], alg.basis_product(i, j)[k]))
                .collect();
            rows.push(row);
        }
    }
    if d == 0 {
        return Subspace::zero(f, 0);
    }
    let reduced = Subspace::from_vectors(f, d, rows);
    Matrix::from_row_vectors(f, d, reduced.basis()).kernel()
}

/// Subalgebra (not necessarily unital) generated by the given elements.
pub fn generated_subalgebra(alg: &ScAlgebra, gens: &[Vec<u32>]) -> Result<Subspace, AlgebraError> {
    let mut span = SpanBuilder::new(alg.field(), alg.dim());
    let mut frontier = Vec::new();
    for g in gens {
        check_elem(alg, g)?;
        if span.insert(g) {
            frontier.push(g.clone());
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in gens {
                for prod in [alg.mul_raw(x, g), alg.mul_raw(g, x)] {
                    if span.insert(&prod) {
                        next.push(prod);
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(span.into_subspace())
}

/// `e A f` as a subspace.
pub fn peirce_space(alg: &ScAlgebra, e: &[u32], f: &[u32]) -> Result<Subspace, AlgebraError> {
    check_elem(alg, e)?;
    check_elem(alg, f)?;
    let mut b = SpanBuilder::new(alg.field(), alg.dim());
    for j in 0..alg.dim() {
        let ebj = alg.mul_basis_right(e, j);
        b.insert(&alg.mul_raw(&ebj, f));
    }
    Ok(b.into_subspace())
}

/// `a A a`.
pub fn corner_subspace(alg: &ScAlgebra, a: &[u32]) -> Result<Subspace, AlgebraError> {
    peirce_space(alg, a, a)
}

/// `e A e` for an idempotent `e`, as an algebra with unity `e`, together with
/// its inclusion into `A`.
pub fn corner_subalgebra(
    alg: &ScAlgebra,
    e: &[u32],
) -> Result<(ScAlgebra, AlgebraMap), AlgebraError> {
    let span = corner_subspace(alg, e)?;
    alg.subalgebra(&span)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MatrixAlgebra;
    use crate::linalg::{Matrix, PrimeField};

    fn upper_triangular(n: usize, p: u32) -> ScAlgebra {
        let f = PrimeField::new(p).unwrap();
        let mut gens = Vec::new();
        for i in 0..n {
            for j in i..n {
                gens.push(Matrix::unit(f, n, i, j));
            }
        }
        MatrixAlgebra::new(f, n, &gens).unwrap().to_sc(None)
    }

    #[test]
    fn centre_of_triangular_is_scalars() {
        let a = upper_triangular(3, 7);
        let z = centre(&a);
        assert_eq!(z.dim(), 1);
        assert!(z.contains(a.unity().unwrap().coords()));
    }

    #[test]
    fn strict_part_is_nilpotent_ideal() {
        let a = upper_triangular(3, 7);
        // Coordinates of E12 and E23 in the canonical basis come from the representation.
        let rep = a.representation().unwrap();
        let strict: Vec<Vec<u32>> = (0..a.dim())
            .filter(|&i| (0..3).all(|k| rep.images[i].get(k, k) == 0))
            .map(|i| a.basis_element(i).into_coords())
            .collect();
        let s = Subspace::from_vectors(a.field(), a.dim(), &strict);
        assert_eq!(s.dim(), 3);
        assert!(is_two_sided_ideal(&a, &s));
        assert_eq!(nilpotency_index(&a, &s).unwrap(), Some(3));
    }

    #[test]
    fn whole_algebra_not_nilpotent() {
        let a = upper_triangular(2, 5);
        let full = Subspace::full(a.field(), a.dim());
        assert_eq!(nilpotency_index(&a, &full).unwrap(), None);
    }

    #[test]
    fn corner_of_unity_is_whole_algebra() {
        let a = upper_triangular(3, 11);
        let u = a.unity().unwrap().coords().to_vec();
        let (c, inc) = corner_subalgebra(&a, &u).unwrap();
        assert_eq!(c.dim(), a.dim());
        assert!(inc.is_isomorphism(&c, &a));
    }
}
