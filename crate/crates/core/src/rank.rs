//! Socles and ranks.
//!
//! For an element `a` of the right socle, `aA` is a semisimple right module
//! annihilated by `J = J(A)`, hence a module over `S = A/J`. Its composition
//! length is the least number of minimal right ideals whose sum contains `a`,
//! and is read off isotypically: the `i`-th simple `S`-module has dimension
//! `n_i e_i`, and `aA z_i'` is the `i`-th isotypic part for any preimage `z_i'`
//! of the central idempotent `z_i` of `S`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::{one_sided_ideal, Quotient, ScAlgebra, Side};
use crate::context::Ctx;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SpanBuilder, Subspace};
use crate::radical::radical;
use crate::wedderburn::{primitive_idempotent_in_block, structure_unchecked, WedderburnStructure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RankValue {
    Finite(usize),
    Infinite,
}

impl RankValue {
    pub fn finite(self) -> Option<usize> {
        match self {
            RankValue::Finite(n) => Some(n),
            RankValue::Infinite => None,
        }
    }
    pub fn is_finite(self) -> bool {
        matches!(self, RankValue::Finite(_))
    }
}

impl fmt::Display for RankValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankValue::Finite(n) => write!(f, "{n}"),
            RankValue::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for RankValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RankValue::Finite(n) => s.serialize_u64(*n as u64),
            RankValue::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// `a = a_1 + ... + a_n` with every `a_i` of rank one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalDecomposition {
    pub components: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankResult {
    pub side: Side,
    pub value: RankValue,
    pub witness: Option<MinimalDecomposition>,
}

/// Everything rank computations need about `A` on one side: the radical, the
/// semisimple quotient with its blocks, preimages of its central idempotents,
/// and the socle. For the left side all data refer to the opposite algebra.
#[derive(Clone, Debug)]
pub struct SocleData {
    pub side: Side,
    pub algebra: ScAlgebra,
    pub radical: Subspace,
    pub quotient: Quotient,
    pub structure: WedderburnStructure,
    /// Preimages in `A` of the central idempotents of `A/J`.
    pub central_lifts: Vec<Vec<u32>>,
    /// Preimages in `A` of one primitive idempotent of `A/J` per block.
    pub primitive_lifts: Vec<Vec<u32>>,
    pub socle: Subspace,
}

impl SocleData {
    pub fn new(alg: &ScAlgebra, side: Side, ctx: &mut Ctx) -> Result<Self> {
        alg.unity_or_err()?;
        let algebra = match side {
            Side::Right => alg.clone(),
            Side::Left => alg.opposite(),
        };
        let j = radical(&algebra, ctx.brute_cap)?;
        let quotient = Quotient::new(&algebra, &j)?;
        let structure = structure_unchecked(&quotient.algebra)?;
        let central_lifts = structure
            .blocks
            .iter()
            .map(|b| quotient.lift(&b.z))
            .collect();
        let mut primitive_lifts = Vec::with_capacity(structure.blocks.len());
        for blk in &structure.blocks {
            let g = primitive_idempotent_in_block(&quotient.algebra, blk, ctx)?;
            primitive_lifts.push(quotient.lift(&g));
        }
        let socle = annihilator_of(&algebra, &j);
        Ok(Self {
            side,
            algebra,
            radical: j,
            quotient,
            structure,
            central_lifts,
            primitive_lifts,
            socle,
        })
    }

    /// Composition length of a right ideal `k` with `k J = 0`.
    pub fn module_length(&self, k: &Subspace) -> Result<usize> {
        let alg = &self.algebra;
        let mut total = 0;
        for (blk, z) in self.structure.blocks.iter().zip(&self.central_lifts) {
            let part = Subspace::from_vectors(
                alg.field(),
                alg.dim(),
                k.basis().iter().map(|x| alg.mul_raw(x, z)),
            );
            let simple = blk.n * blk.e;
            if !part.dim().is_multiple_of(simple) {
                return Err(Error::NonIntegralLength(format!(
                    "isotypic part of dimension {} over simple modules of dimension {simple}",
                    part.dim()
                )));
            }
            total += part.dim() / simple;
        }
        Ok(total)
    }

    pub fn rank(&self, a: &[u32]) -> Result<RankValue> {
        self.algebra.check(&a.to_vec().into())?;
        if !self.socle.contains(a) {
            return Ok(RankValue::Infinite);
        }
        let m = principal_right_ideal(&self.algebra, a)?;
        Ok(RankValue::Finite(self.module_length(&m)?))
    }

    /// Splits `a` (in the socle) into rank-one summands.
    pub fn minimal_decomposition(&self, a: &[u32]) -> Result<MinimalDecomposition> {
        let total = self
            .rank(a)?
            .finite()
            .ok_or_else(|| Error::InfiniteRank("element".into()))?;
        let alg = &self.algebra;
        let mut rest = a.to_vec();
        let mut components = Vec::with_capacity(total);
        while rest.iter().any(|&c| c != 0) {
            let kappa = self.peel(&rest)?;
            rest = alg.sub(&rest, &kappa);
            components.push(kappa);
            if components.len() > total {
                return Err(Error::InternalInconsistency(
                    "peel-off produced more components than the rank".into(),
                ));
            }
        }
        if components.len() != total {
            return Err(Error::InternalInconsistency(format!(
                "peel-off produced {} components for rank {total}",
                components.len()
            )));
        }
        Ok(MinimalDecomposition { components })
    }

    /// One rank-one summand `kappa` of `a` such that `a - kappa` has rank one
    /// less: `kappa` is the image of `a` under a module projection of `aA`
    /// onto a minimal right ideal `K = mA`.
    fn peel(&self, a: &[u32]) -> Result<Vec<u32>> {
        let alg = &self.algebra;
        let f = alg.field();
        let d = alg.dim();
        let (m, t) = self
            .primitive_lifts
            .iter()
            .find_map(|g| {
                (0..d).find_map(|r| {
                    let t = alg.mul_basis_left(r, g);
                    let m = alg.mul_raw(a, &t);
                    m.iter().any(|&c| c != 0).then_some((m, t))
                })
            })
            .ok_or_else(|| Error::InternalInconsistency("aA meets no block".into()))?;
        let k = principal_right_ideal(alg, &m)?;
        let ann = alg.left_mult_matrix(a).kernel();
        // Unknowns: coordinates of kappa in the basis of K.
        let mut rows: Vec<Vec<u32>> = Vec::new();
        let mut rhs: Vec<u32> = Vec::new();
        let kt: Vec<Vec<u32>> = k.basis().iter().map(|x| alg.mul_raw(x, &t)).collect();
        for l in 0..d {
            rows.push(kt.iter().map(|v| v[l]).collect());
            rhs.push(m[l]);
        }
        for r in ann.basis() {
            let kr: Vec<Vec<u32>> = k.basis().iter().map(|x| alg.mul_raw(x, r)).collect();
            for l in 0..d {
                rows.push(kr.iter().map(|v| v[l]).collect());
                rhs.push(0);
            }
        }
        let sys = Matrix::from_row_vectors(f, k.dim(), &rows);
        let c = sys.solve(&rhs).ok_or_else(|| {
            Error::InternalInconsistency("no module projection onto a minimal summand".into())
        })?;
        Ok(k.combine(&c))
    }
}

/// `aA` for unital `A`.
fn principal_right_ideal(alg: &ScAlgebra, a: &[u32]) -> Result<Subspace> {
    let gen = Subspace::from_vectors(alg.field(), alg.dim(), [a]);
    Ok(one_sided_ideal(alg, &gen, Side::Right)?)
}

/// `{x : x j = 0 for all j in J}`.
fn annihilator_of(alg: &ScAlgebra, j: &Subspace) -> Subspace {
    let d = alg.dim();
    let f = alg.field();
    if j.is_zero() {
        return Subspace::full(f, d);
    }
    let mut rows = SpanBuilder::new(f, d);
    for y in j.basis() {
        let r = alg.right_mult_matrix(y);
        for row in r.row_vectors() {
            rows.insert(&row);
        }
    }
    Matrix::from_row_vectors(f, d, rows.into_subspace().basis()).kernel()
}

pub fn right_socle(alg: &ScAlgebra, ctx: &mut Ctx) -> Result<Subspace> {
    alg.unity_or_err()?;
    let j = radical(alg, ctx.brute_cap)?;
    Ok(annihilator_of(alg, &j))
}

/// `{x : J x = 0}`.
pub fn left_socle(alg: &ScAlgebra, ctx: &mut Ctx) -> Result<Subspace> {
    right_socle(&alg.opposite(), ctx)
}

fn rank_on(alg: &ScAlgebra, a: &[u32], side: Side, ctx: &mut Ctx) -> Result<RankResult> {
    let data = SocleData::new(alg, side, ctx)?;
    Ok(RankResult {
        side,
        value: data.rank(a)?,
        witness: None,
    })
}

pub fn right_rank(alg: &ScAlgebra, a: &[u32], ctx: &mut Ctx) -> Result<RankResult> {
    rank_on(alg, a, Side::Right, ctx)
}

pub fn left_rank(alg: &ScAlgebra, a: &[u32], ctx: &mut Ctx) -> Result<RankResult> {
    rank_on(alg, a, Side::Left, ctx)
}

/// Right rank together with a minimal right decomposition when finite.
pub fn right_rank_with_witness(alg: &ScAlgebra, a: &[u32], ctx: &mut Ctx) -> Result<RankResult> {
    let data = SocleData::new(alg, Side::Right, ctx)?;
    let value = data.rank(a)?;
    let witness = match value {
        RankValue::Finite(n) if n > 0 => Some(data.minimal_decomposition(a)?),
        _ => None,
    };
    Ok(RankResult {
        side: Side::Right,
        value,
        witness,
    })
}

pub fn minimal_right_decomposition(
    alg: &ScAlgebra,
    a: &[u32],
    ctx: &mut Ctx,
) -> Result<MinimalDecomposition> {
    let data = SocleData::new(alg, Side::Right, ctx)?;
    match data.rank(a)? {
        RankValue::Finite(n) if n >= 1 => data.minimal_decomposition(a),
        RankValue::Finite(_) => Err(Error::HypothesisViolation(
            "a minimal right decomposition needs a nonzero element".into(),
        )),
        RankValue::Infinite => Err(Error::InfiniteRank("element".into())),
    }
}

pub fn is_minimal_right_ideal(alg: &ScAlgebra, k: &Subspace, ctx: &mut Ctx) -> Result<bool> {
    if !crate::algebra::is_right_ideal(alg, k) {
        return Err(Error::NotARightIdeal);
    }
    let data = SocleData::new(alg, Side::Right, ctx)?;
    is_minimal_with(&data, k)
}

pub(crate) fn is_minimal_with(data: &SocleData, k: &Subspace) -> Result<bool> {
    if k.is_zero() || !k.is_subspace_of(&data.socle) {
        return Ok(false);
    }
    Ok(data.module_length(k)? == 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankOneCheck {
    pub is_minimal: bool,
    pub corner_is_division: bool,
}

/// Evaluates both sides of "eA minimal implies eAe a division ring", and the
/// converse when `A` is semiprime.
pub fn rank_one_corner_check(alg: &ScAlgebra, e: &[u32], ctx: &mut Ctx) -> Result<RankOneCheck> {
    alg.check(&e.to_vec().into())?;
    if !alg.is_idempotent(e) || e.iter().all(|&c| c == 0) {
        return Err(Error::NotIdempotent);
    }
    let data = SocleData::new(alg, Side::Right, ctx)?;
    let ea = principal_right_ideal(alg, e)?;
    let is_minimal = is_minimal_with(&data, &ea)?;
    let span = crate::algebra::corner_subspace(alg, e)?;
    let (corner, _) = alg.subalgebra(&span)?;
    let corner_is_division = radical(&corner, ctx.brute_cap)?.is_zero()
        && matches!(structure_unchecked(&corner)?.shape()[..], [(1, _)]);
    if is_minimal && !corner_is_division {
        return Err(Error::InternalInconsistency(
            "eA is minimal but eAe is not a division ring".into(),
        ));
    }
    if data.radical.is_zero() && is_minimal != corner_is_division {
        return Err(Error::InternalInconsistency(
            "semiprime algebra with eAe a division ring but eA not minimal".into(),
        ));
    }
    Ok(RankOneCheck {
        is_minimal,
        corner_is_division,
    })
}

/// Definitional right rank by exhaustive search: enumerate all minimal right
/// ideals, then the smallest number of them whose sum contains `a`.
pub fn right_rank_bruteforce(alg: &ScAlgebra, a: &[u32], cap: u128) -> Result<RankValue> {
    alg.unity_or_err()?;
    let minimal = minimal_right_ideals_bruteforce(alg, cap)?;
    if a.iter().all(|&c| c == 0) {
        return Ok(RankValue::Finite(0));
    }
    let f = alg.field();
    let all = minimal
        .iter()
        .try_fold(Subspace::zero(f, alg.dim()), |acc, k| acc.sum(k))?;
    if !all.contains(a) {
        return Ok(RankValue::Infinite);
    }
    for size in 1..=minimal.len() {
        let mut found = false;
        for_each_subset(minimal.len(), size, |idx| {
            let s = idx.iter().fold(Subspace::zero(f, alg.dim()), |acc, &i| {
                acc.sum(&minimal[i]).expect("same ambient")
            });
            found = s.contains(a);
            !found
        });
        if found {
            return Ok(RankValue::Finite(size));
        }
    }
    Err(Error::InternalInconsistency(
        "element in the socle but in no finite sum".into(),
    ))
}

/// All minimal right ideals, found as the ideals `xA` none of whose nonzero
/// elements generates a smaller one.
pub fn minimal_right_ideals_bruteforce(alg: &ScAlgebra, cap: u128) -> Result<Vec<Subspace>> {
    let size = crate::radical::element_count(alg);
    if size > cap {
        return Err(Error::SearchSpaceTooLarge { size, cap });
    }
    let p = alg.field().p();
    let mut out: Vec<Subspace> = Vec::new();
    let mut err = None;
    crate::radical::for_each_vector(p, alg.dim(), |x| {
        if x.iter().all(|&c| c == 0) {
            return true;
        }
        let k = match principal_right_ideal(alg, x) {
            Ok(k) => k,
            Err(e) => {
                err = Some(e);
                return false;
            }
        };
        if out.contains(&k) {
            return true;
        }
        let mut minimal = true;
        crate::radical::for_each_vector(p, k.dim(), |c| {
            if c.iter().all(|&v| v == 0) {
                return true;
            }
            let y = k.combine(c);
            minimal = principal_right_ideal(alg, &y)
                .map(|ky| ky == k)
                .unwrap_or(false);
            minimal
        });
        if minimal {
            out.push(k);
        }
        true
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(out)
}

/// Calls `visit` on every `k`-subset of `0..n` in lexicographic order until it
/// returns false.
fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !visit(&idx) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
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

    /// Coordinates of a matrix in the canonical basis of a matrix algebra.
    fn elem(alg: &ScAlgebra, entries: &[(usize, usize)]) -> Vec<u32> {
        let rep = alg.representation().unwrap();
        let n = rep.size;
        let f = alg.field();
        let mut m = Matrix::zeros(f, n, n);
        for &(i, j) in entries {
            m.set(i, j, 1);
        }
        let imgs: Vec<Vec<u32>> = rep.images.iter().map(|x| x.data().to_vec()).collect();
        Matrix::from_column_vectors(f, n * n, &imgs)
            .solve(m.data())
            .unwrap()
    }

    #[test]
    fn ranks_in_full_matrix_ring() {
        let m3 = full(101, 3);
        let mut ctx = Ctx::new(3);
        let a = elem(&m3, &[(0, 0), (1, 2)]);
        assert_eq!(
            right_rank(&m3, &a, &mut ctx).unwrap().value,
            RankValue::Finite(2)
        );
        let a2 = m3.mul_raw(&a, &a);
        assert_eq!(a2, elem(&m3, &[(0, 0)]));
        assert_eq!(
            right_rank(&m3, &a2, &mut ctx).unwrap().value,
            RankValue::Finite(1)
        );
        assert_eq!(
            right_rank(&m3, &[0; 9], &mut ctx).unwrap().value,
            RankValue::Finite(0)
        );
        let one = m3.unity().unwrap().coords().to_vec();
        assert_eq!(
            left_rank(&m3, &one, &mut ctx).unwrap().value,
            RankValue::Finite(3)
        );
    }

    #[test]
    fn triangular_socle_and_infinite_rank() {
        // canonical basis E11, E12, E22
        let t = units(101, 2, &[(0, 0), (0, 1), (1, 1)]);
        let mut ctx = Ctx::new(0);
        let soc = right_socle(&t, &mut ctx).unwrap();
        assert_eq!(
            soc,
            Subspace::from_vectors(t.field(), 3, [[0u32, 1, 0], [0, 0, 1]])
        );
        assert_eq!(
            right_rank(&t, &[1, 0, 0], &mut ctx).unwrap().value,
            RankValue::Infinite
        );
        let k = Subspace::from_vectors(t.field(), 3, [[0u32, 1, 0]]);
        assert!(is_minimal_right_ideal(&t, &k, &mut ctx).unwrap());
        let check = rank_one_corner_check(&t, &[1, 0, 0], &mut ctx).unwrap();
        assert_eq!((check.is_minimal, check.corner_is_division), (false, true));
    }

    #[test]
    fn minimal_ideals_in_m2() {
        let m2 = full(101, 2);
        let mut ctx = Ctx::new(0);
        let e11 = elem(&m2, &[(0, 0)]);
        let k = principal_right_ideal(&m2, &e11).unwrap();
        assert!(is_minimal_right_ideal(&m2, &k, &mut ctx).unwrap());
        assert!(!is_minimal_right_ideal(&m2, &Subspace::full(m2.field(), 4), &mut ctx).unwrap());
        let c = rank_one_corner_check(&m2, &e11, &mut ctx).unwrap();
        assert!(c.is_minimal && c.corner_is_division);
        let one = m2.unity().unwrap().coords().to_vec();
        let c = rank_one_corner_check(&m2, &one, &mut ctx).unwrap();
        assert!(!c.is_minimal && !c.corner_is_division);
    }

    #[test]
    fn decomposition_of_identity() {
        let m2 = full(101, 2);
        for seed in 0..4 {
            let mut ctx = Ctx::new(seed);
            let one = m2.unity().unwrap().coords().to_vec();
            let dec = minimal_right_decomposition(&m2, &one, &mut ctx).unwrap();
            assert_eq!(dec.components.len(), 2);
            let sum = dec
                .components
                .iter()
                .fold(vec![0; 4], |acc, c| m2.add(&acc, c));
            assert_eq!(sum, one);
            for c in &dec.components {
                assert_eq!(
                    right_rank(&m2, c, &mut ctx).unwrap().value,
                    RankValue::Finite(1)
                );
            }
        }
    }

    #[test]
    fn bruteforce_rank_agrees_on_small_cases() {
        let t = units(3, 2, &[(0, 0), (0, 1), (1, 1)]);
        let mut ctx = Ctx::new(0);
        for x in [[1u32, 0, 0], [0, 1, 0], [0, 1, 2], [1, 2, 1]] {
            let fast = right_rank(&t, &x, &mut ctx).unwrap().value;
            let slow = right_rank_bruteforce(&t, &x, 1 << 20).unwrap();
            assert_eq!(fast, slow, "element {x:?}");
        }
        let m2 = full(2, 2);
        let one = m2.unity().unwrap().coords().to_vec();
        assert_eq!(
            right_rank_bruteforce(&m2, &one, 1 << 20).unwrap(),
            RankValue::Finite(2)
        );
    }

    #[test]
    fn subsets_are_enumerated() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, |s| {
            seen.push(s.to_vec());
            true
        });
        assert_eq!(seen.len(), 6);
        assert_eq!(seen.last().unwrap(), &vec![2, 3]);
    }
}
