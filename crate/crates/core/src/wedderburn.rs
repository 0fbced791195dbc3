//! Wedderburn–Artin structure of semisimple algebras over GF(p).
//!
//! Every finite division ring is a field, so each simple block is
//! `M_n(GF(p^e))` and is recorded as the pair `(n, e)`.

use serde::Serialize;

use crate::algebra::{centre, generated_subalgebra, peirce_space, ScAlgebra};
use crate::context::Ctx;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SpanBuilder, Subspace};
use crate::radical::radical;

/// Retry budget for randomized descents.
pub const MAX_RETRIES: usize = 64;

/// One simple block `M_n(GF(p^e))` with its central primitive idempotent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockParams {
    pub n: usize,
    pub e: usize,
    pub z: Vec<u32>,
    #[serde(skip)]
    pub block: Subspace,
}

impl BlockParams {
    pub fn dim(&self) -> usize {
        self.block.dim()
    }

    /// Size of the field `GF(p^e)`, if it fits.
    pub fn q(&self, p: u32) -> Option<u128> {
        (p as u128).checked_pow(self.e as u32)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WedderburnStructure {
    pub p: u32,
    pub algebra_dim: usize,
    pub blocks: Vec<BlockParams>,
}

impl WedderburnStructure {
    /// Sum of the matrix sizes `n_i`.
    pub fn total_n(&self) -> usize {
        self.blocks.iter().map(|b| b.n).sum()
    }

    /// `(n_i, e_i)` in block order.
    pub fn shape(&self) -> Vec<(usize, usize)> {
        self.blocks.iter().map(|b| (b.n, b.e)).collect()
    }
}

/// `M_2(GF(p)) x M_1(GF(p^2))` for the shape `[(2, 1), (1, 2)]`, `0` if empty.
pub fn describe_shape(shape: &[(usize, usize)]) -> String {
    if shape.is_empty() {
        return "0".into();
    }
    shape
        .iter()
        .map(|&(n, e)| match e {
            1 => format!("M_{n}(GF(p))"),
            _ => format!("M_{n}(GF(p^{e}))"),
        })
        .collect::<Vec<_>>()
        .join(" x ")
}

/// `x -> x^p` on a commutative subalgebra `s`, as a matrix in `s`-coordinates.
fn frobenius_matrix(alg: &ScAlgebra, s: &Subspace) -> Matrix {
    let p = alg.field().p() as u64;
    let cols: Vec<Vec<u32>> = s
        .basis()
        .iter()
        .map(|x| s.coords(&alg.pow_raw(x, p)).expect("subalgebra closed"))
        .collect();
    Matrix::from_column_vectors(alg.field(), s.dim(), &cols)
}

/// Elements of the commutative subalgebra `s` fixed by `x -> x^p`. This is
/// a split semisimple algebra `GF(p)^k`, `k` the number of local factors of `s`.
pub(crate) fn frobenius_fixed(alg: &ScAlgebra, s: &Subspace) -> Subspace {
    let f = alg.field();
    let m = frobenius_matrix(alg, s)
        .sub(&Matrix::identity(f, s.dim()))
        .expect("square");
    let k = m.kernel();
    Subspace::from_vectors(f, alg.dim(), k.basis().iter().map(|c| s.combine(c)))
}

/// Nilpotent elements of the commutative subalgebra `s`: the kernel of a
/// Frobenius power `x -> x^(p^m)` with `p^m >= dim s`.
pub(crate) fn nilradical_commutative(alg: &ScAlgebra, s: &Subspace) -> Subspace {
    let f = alg.field();
    let frob = frobenius_matrix(alg, s);
    let mut power = frob.clone();
    let mut reach = f.p() as usize;
    while reach < s.dim() {
        power = power.mul(&frob).expect("square");
        reach = reach.saturating_mul(f.p() as usize);
    }
    let k = power.kernel();
    Subspace::from_vectors(f, alg.dim(), k.basis().iter().map(|c| s.combine(c)))
}

/// Minimal polynomial of `x` over the unity `u` of a commutative subalgebra,
/// as coefficients `c_0, ..., c_{k-1}` with `x^k = sum c_i x^i` (`x^0 = u`).
fn minimal_relation(alg: &ScAlgebra, u: &[u32], x: &[u32]) -> Vec<u32> {
    let f = alg.field();
    let mut powers = vec![u.to_vec()];
    loop {
        let next = alg.mul_raw(powers.last().expect("nonempty"), x);
        let m = Matrix::from_column_vectors(f, alg.dim(), &powers);
        if let Some(c) = m.solve(&next) {
            return c;
        }
        powers.push(next);
    }
}

/// Splits `u` (an idempotent of a commutative subalgebra containing `x`, with
/// `x u = x`) into the orthogonal idempotents `pi_lambda`, one per root of
/// the minimal polynomial of `x`. Requires that polynomial to split into
/// distinct linear factors, which holds for Frobenius-fixed `x`.
fn split_by(alg: &ScAlgebra, u: &[u32], x: &[u32]) -> Result<Vec<Vec<u32>>> {
    let f = alg.field();
    let p = f.p();
    let rel = minimal_relation(alg, u, x);
    let deg = rel.len();
    if deg == 1 {
        return Ok(vec![u.to_vec()]);
    }
    // m(t) = t^deg - sum rel_i t^i
    let value = |t: u32| {
        let mut val = f.pow(t, deg as u64);
        let mut tp = 1u32;
        for &c in &rel {
            val = f.sub(val, f.mul(c, tp));
            tp = f.mul(tp, t);
        }
        val
    };
    let roots: Vec<u32> = (0..p).filter(|&t| value(t) == 0).collect();
    if roots.len() != deg {
        return Err(Error::InternalInconsistency(
            "minimal polynomial of a Frobenius-fixed element does not split".into(),
        ));
    }
    let mut out = Vec::with_capacity(deg);
    for &lam in &roots {
        let mut pi = u.to_vec();
        for &mu in roots.iter().filter(|&&m| m != lam) {
            let denom = f.inv(f.sub(lam, mu)).expect("distinct roots");
            let factor = alg.scale(denom, &alg.sub(x, &alg.scale(mu, u)));
            pi = alg.mul_raw(&pi, &factor);
        }
        out.push(pi);
    }
    Ok(out)
}

/// Primitive idempotents of a commutative subalgebra with unity `u`, given
/// its Frobenius-fixed part `fixed` (which contains `u`).
pub(crate) fn primitive_idempotents_commutative(
    alg: &ScAlgebra,
    u: &[u32],
    fixed: &Subspace,
) -> Result<Vec<Vec<u32>>> {
    let mut parts = vec![u.to_vec()];
    for b in fixed.basis() {
        if parts.len() == fixed.dim() {
            break;
        }
        let mut next = Vec::new();
        for g in &parts {
            let bg = alg.mul_raw(b, g);
            next.extend(split_by(alg, g, &bg)?);
        }
        parts = next;
    }
    if parts.len() != fixed.dim() {
        return Err(Error::InternalInconsistency(format!(
            "found {} primitive idempotents, expected {}",
            parts.len(),
            fixed.dim()
        )));
    }
    Ok(parts)
}

/// `span{x b_i}` for central `x`.
fn ideal_of_central(alg: &ScAlgebra, z: &[u32]) -> Subspace {
    let mut b = SpanBuilder::new(alg.field(), alg.dim());
    for i in 0..alg.dim() {
        b.insert(&alg.mul_basis_right(z, i));
    }
    b.into_subspace()
}

fn integer_sqrt(x: usize) -> Option<usize> {
    let r = (x as f64).sqrt().round() as usize;
    (r * r == x).then_some(r)
}

/// Block decomposition of a semisimple unital algebra, computed without
/// checking semisimplicity.
pub(crate) fn structure_unchecked(alg: &ScAlgebra) -> Result<WedderburnStructure> {
    let unity = alg.unity_or_err()?.coords().to_vec();
    let z = centre(alg);
    let fixed = frobenius_fixed(alg, &z);
    let idems = primitive_idempotents_commutative(alg, &unity, &fixed)?;
    let mut blocks = Vec::with_capacity(idems.len());
    for zi in idems {
        let block = ideal_of_central(alg, &zi);
        let zc = Subspace::from_vectors(
            alg.field(),
            alg.dim(),
            z.basis().iter().map(|c| alg.mul_raw(c, &zi)),
        );
        let e = zc.dim();
        let n = integer_sqrt(block.dim() / e.max(1))
            .filter(|n| n * n * e == block.dim())
            .ok_or_else(|| {
                Error::InternalInconsistency(format!(
                    "block of dimension {} with centre of dimension {e} is not M_n over a field",
                    block.dim()
                ))
            })?;
        blocks.push(BlockParams { n, e, z: zi, block });
    }
    blocks.sort_by(|a, b| (a.n, a.e, a.block.basis()).cmp(&(b.n, b.e, b.block.basis())));
    Ok(WedderburnStructure {
        p: alg.field().p(),
        algebra_dim: alg.dim(),
        blocks,
    })
}

/// Wedderburn–Artin blocks of a unital semisimple algebra.
pub fn wedderburn_structure(alg: &ScAlgebra, ctx: &Ctx) -> Result<WedderburnStructure> {
    alg.unity_or_err()?;
    let j = radical(alg, ctx.brute_cap)?;
    if !j.is_zero() {
        return Err(Error::NotSemisimple(j.dim()));
    }
    structure_unchecked(alg)
}

/// Structure of the corner `eAe` for an idempotent `e`; block data is given
/// in the coordinates of `A`.
pub fn corner_structure_of_idempotent(
    alg: &ScAlgebra,
    e: &[u32],
    ctx: &Ctx,
) -> Result<WedderburnStructure> {
    alg.check(&e.to_vec().into())?;
    if !alg.is_idempotent(e) {
        return Err(Error::NotIdempotent);
    }
    if e.iter().all(|&c| c == 0) {
        return Ok(WedderburnStructure {
            p: alg.field().p(),
            algebra_dim: 0,
            blocks: Vec::new(),
        });
    }
    let span = peirce_space(alg, e, e)?;
    let (corner, inclusion) = alg.subalgebra(&span)?;
    if !radical(&corner, ctx.brute_cap)?.is_zero() {
        return Err(Error::CornerNotSemisimple);
    }
    let inner = structure_unchecked(&corner)?;
    let blocks = inner
        .blocks
        .into_iter()
        .map(|b| BlockParams {
            n: b.n,
            e: b.e,
            z: inclusion.apply(&b.z),
            block: b.block.image(inclusion.matrix()),
        })
        .collect();
    Ok(WedderburnStructure {
        p: inner.p,
        algebra_dim: corner.dim(),
        blocks,
    })
}

/// An idempotent `g` in the block with `gAg` a field of degree `e`.
///
/// Descent: while `gAg` is larger than its centre part, take a random
/// `x in gAg` and the commutative algebra `S` generated by `g`, `x` and the
/// block centre times `g`. A split `S` gives a smaller idempotent directly;
/// a local `S` with a nilpotent `y` gives the proper idempotent `y w` where
/// `y w y = y`; a field `S` is a failed draw.
pub fn primitive_idempotent_in_block(
    alg: &ScAlgebra,
    blk: &BlockParams,
    ctx: &mut Ctx,
) -> Result<Vec<u32>> {
    let centre_part: Vec<Vec<u32>> = {
        let z = centre(alg);
        z.basis().iter().map(|c| alg.mul_raw(c, &blk.z)).collect()
    };
    descend_to_primitive(alg, &blk.z, &centre_part, blk.e, ctx)
}

/// Shared descent used for blocks of `A` and for lifts modulo a radical:
/// `target` is the dimension of `gAg` at which to stop.
pub(crate) fn descend_to_primitive(
    alg: &ScAlgebra,
    start: &[u32],
    centre_part: &[Vec<u32>],
    target: usize,
    ctx: &mut Ctx,
) -> Result<Vec<u32>> {
    let mut g = start.to_vec();
    let mut failures = 0;
    loop {
        let gag = peirce_space(alg, &g, &g)?;
        if gag.dim() <= target {
            if gag.dim() < target || !alg.is_idempotent(&g) {
                return Err(Error::InternalInconsistency(
                    "descent overshot the primitive dimension".into(),
                ));
            }
            return Ok(g);
        }
        let x = ctx.random_in(&gag);
        let mut gens = vec![g.clone(), x];
        gens.extend(centre_part.iter().map(|c| alg.mul_raw(c, &g)));
        let s = generated_subalgebra(alg, &gens)?;
        let fixed = frobenius_fixed(alg, &s);
        if fixed.dim() >= 2 {
            let parts = primitive_idempotents_commutative(alg, &g, &fixed)?;
            g = parts.into_iter().next().expect("at least two parts");
            continue;
        }
        let nil = nilradical_commutative(alg, &s);
        if let Some(y) = nil.basis().first() {
            // y is nonzero and nilpotent in the semisimple gAg, so y w y = y is solvable.
            let cols: Vec<Vec<u32>> = gag.basis().iter().map(|w| alg.mul3(y, w, y)).collect();
            let m = Matrix::from_column_vectors(alg.field(), alg.dim(), &cols);
            if let Some(c) = m.solve(y) {
                g = alg.mul_raw(y, &gag.combine(&c));
                continue;
            }
            return Err(Error::InternalInconsistency(
                "nilpotent element of a semisimple corner is not regular".into(),
            ));
        }
        failures += 1;
        if failures >= MAX_RETRIES {
            return Err(Error::RetriesExhausted(failures));
        }
    }
}

/// Lifts `x` with `x^2 - x in N` to an idempotent congruent to `x` modulo the
/// nilpotent ideal `N`, by iterating `x -> 3x^2 - 2x^3`.
pub fn lift_idempotent(alg: &ScAlgebra, n: &Subspace, x: &[u32]) -> Result<Vec<u32>> {
    alg.check(&x.to_vec().into())?;
    let f = alg.field();
    let x2 = alg.mul_raw(x, x);
    if !n.contains(&alg.sub(&x2, x)) {
        return Err(Error::NotAlmostIdempotent);
    }
    let three = 3 % f.p();
    let two = 2 % f.p();
    let mut cur = x.to_vec();
    // Each round squares the defect, so log2 of the nilindex rounds suffice.
    for _ in 0..=usize::BITS {
        let sq = alg.mul_raw(&cur, &cur);
        if sq == cur {
            return Ok(cur);
        }
        let cube = alg.mul_raw(&sq, &cur);
        cur = alg.sub(&alg.scale(three, &sq), &alg.scale(two, &cube));
    }
    Err(Error::InternalInconsistency(
        "idempotent lifting did not converge; the ideal is not nilpotent".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MatrixAlgebra;
    use crate::linalg::PrimeField;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn block_diagonal(p: u32, sizes: &[usize]) -> ScAlgebra {
        let f = gf(p);
        let n: usize = sizes.iter().sum();
        let mut gens = Vec::new();
        let mut off = 0;
        for &s in sizes {
            for i in 0..s {
                for j in 0..s {
                    gens.push(Matrix::unit(f, n, off + i, off + j));
                }
            }
            off += s;
        }
        MatrixAlgebra::new(f, n, &gens).unwrap().to_sc(None)
    }

    /// GF(p^2) as 2x2 matrices: span{I, C} with C the companion matrix of an
    /// irreducible quadratic `t^2 - r` for a non-residue `r`.
    fn quadratic_field(p: u32) -> ScAlgebra {
        let f = gf(p);
        let r = (2..p)
            .find(|&r| f.pow(r, ((p - 1) / 2) as u64) == p - 1)
            .unwrap();
        let c = Matrix::from_rows(f, &[[0, r as i64], [1, 0]]);
        MatrixAlgebra::generated_by(f, 2, &[Matrix::identity(f, 2), c]).to_sc(None)
    }

    #[test]
    fn matrix_ring_one_block() {
        let a = block_diagonal(101, &[2]);
        let s = wedderburn_structure(&a, &Ctx::default()).unwrap();
        assert_eq!(s.shape(), vec![(2, 1)]);
        assert_eq!(&s.blocks[0].z, a.unity().unwrap().coords());
    }

    #[test]
    fn product_of_two_blocks() {
        let a = block_diagonal(101, &[3, 2]);
        let s = wedderburn_structure(&a, &Ctx::default()).unwrap();
        assert_eq!(s.shape(), vec![(2, 1), (3, 1)]);
        let sum = a.add(&s.blocks[0].z, &s.blocks[1].z);
        assert_eq!(&sum, a.unity().unwrap().coords());
        assert!(a
            .mul_raw(&s.blocks[0].z, &s.blocks[1].z)
            .iter()
            .all(|&c| c == 0));
    }

    #[test]
    fn extension_field_block() {
        let a = quadratic_field(101);
        let s = wedderburn_structure(&a, &Ctx::default()).unwrap();
        assert_eq!(s.shape(), vec![(1, 2)]);
        assert_eq!(s.blocks[0].q(101), Some(101 * 101));
    }

    #[test]
    fn triangular_is_rejected() {
        let f = gf(101);
        let gens = [
            Matrix::unit(f, 2, 0, 0),
            Matrix::unit(f, 2, 0, 1),
            Matrix::unit(f, 2, 1, 1),
        ];
        let t = MatrixAlgebra::new(f, 2, &gens).unwrap().to_sc(None);
        assert!(matches!(
            wedderburn_structure(&t, &Ctx::default()),
            Err(Error::NotSemisimple(1))
        ));
        // E11 T_2 E11 is a field even though E11 has infinite rank in T_2.
        let cs = corner_structure_of_idempotent(&t, &[1, 0, 0], &Ctx::default()).unwrap();
        assert_eq!(cs.shape(), vec![(1, 1)]);
    }

    #[test]
    fn primitive_idempotents_have_field_corners() {
        for seed in 0..5 {
            let mut ctx = Ctx::new(seed);
            let a = block_diagonal(101, &[1, 3]);
            let s = wedderburn_structure(&a, &ctx).unwrap();
            for blk in &s.blocks {
                let g = primitive_idempotent_in_block(&a, blk, &mut ctx).unwrap();
                assert!(a.is_idempotent(&g));
                assert_eq!(peirce_space(&a, &g, &g).unwrap().dim(), blk.e);
                assert!(blk.block.contains(&g));
            }
        }
        let q = quadratic_field(7);
        let s = wedderburn_structure(&q, &Ctx::default()).unwrap();
        let g = primitive_idempotent_in_block(&q, &s.blocks[0], &mut Ctx::new(1)).unwrap();
        assert_eq!(&g, q.unity().unwrap().coords());
    }

    #[test]
    fn lifting_examples() {
        let f = gf(101);
        let gens = [
            Matrix::unit(f, 2, 0, 0),
            Matrix::unit(f, 2, 0, 1),
            Matrix::unit(f, 2, 1, 1),
        ];
        let t = MatrixAlgebra::new(f, 2, &gens).unwrap().to_sc(None);
        let n = Subspace::from_vectors(f, 3, [[0u32, 1, 0]]);
        let g = lift_idempotent(&t, &n, &[1, 1, 0]).unwrap();
        assert!(t.is_idempotent(&g));
        assert!(n.contains(&t.sub(&g, &[1, 1, 0])));
        assert_eq!(lift_idempotent(&t, &n, &[0, 5, 0]).unwrap(), vec![0, 0, 0]);
        assert_eq!(lift_idempotent(&t, &n, &[1, 0, 0]).unwrap(), vec![1, 0, 0]);
        assert!(matches!(
            lift_idempotent(&t, &n, &[2, 0, 0]),
            Err(Error::NotAlmostIdempotent)
        ));
    }
}
