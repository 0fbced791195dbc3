//! Corner algebras `aAa`: the isomorphism with a deformed Peirce corner, the
//! structure of `aAa` modulo its radical, and the decomposition of `aAa` into
//! ideals attached to the blocks of `fAf`, where `eae = f w` inside `eAe`.
//!
//! All decomposition work happens in the coordinates of `C = eAe` with the
//! product `x *_f y = x f y`; results reach `aAa` through the map
//! `x -> w^-1 x a`, which is checked to be an isomorphism `C_f -> aAa`.

use serde::Serialize;

use crate::algebra::{
    corner_subspace, is_two_sided_ideal, nilpotency_index, peirce_space, subspace_product,
    two_sided_ideal, AlgebraError, AlgebraMap, Quotient, ScAlgebra, Side,
};
use crate::context::Ctx;
use crate::error::{Error, Result};
use crate::ledger::Ledger;
use crate::linalg::{Matrix, Subspace};
use crate::radical::{radical, radical_of_deformed};
use crate::rank::{right_rank, RankValue, SocleData};
use crate::regular::{
    inner_inverse, square_witnesses, unit_regular_factorization, RegularCertificate,
};
use crate::wedderburn::{
    corner_structure_of_idempotent, describe_shape, lift_idempotent, structure_unchecked,
    wedderburn_structure, WedderburnStructure,
};

fn inconsistent(msg: impl Into<String>) -> Error {
    Error::InternalInconsistency(msg.into())
}

/// Structure of a semisimple algebra, allowing the zero algebra.
fn structure_or_empty(alg: &ScAlgebra) -> Result<WedderburnStructure> {
    if alg.dim() == 0 {
        return Ok(WedderburnStructure {
            p: alg.field().p(),
            algebra_dim: 0,
            blocks: Vec::new(),
        });
    }
    structure_unchecked(alg)
}

fn sum_all(field: crate::linalg::PrimeField, ambient: usize, parts: &[&Subspace]) -> Subspace {
    Subspace::from_vectors(
        field,
        ambient,
        parts.iter().flat_map(|s| s.basis().iter().cloned()),
    )
}

/// Coordinates of a subspace of `span` in the basis of `span`.
fn localize(span: &Subspace, s: &Subspace) -> Result<Subspace> {
    let vecs = s
        .basis()
        .iter()
        .map(|v| {
            span.coords(v)
                .ok_or_else(|| inconsistent("subspace leaves its span"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Subspace::from_vectors(span.field(), span.dim(), vecs))
}

fn coords_in(span: &Subspace, v: &[u32]) -> Result<Vec<u32>> {
    span.coords(v)
        .ok_or_else(|| inconsistent("element leaves its span"))
}

/// `eAe` with its inclusion, where `e` is idempotent.
struct Peirce {
    span: Subspace,
    algebra: ScAlgebra,
    inclusion: AlgebraMap,
}

impl Peirce {
    fn new(alg: &ScAlgebra, e: &[u32]) -> Result<Self> {
        let span = peirce_space(alg, e, e)?;
        let (algebra, inclusion) = alg.subalgebra(&span)?;
        Ok(Self {
            span,
            algebra,
            inclusion,
        })
    }

    fn local(&self, x: &[u32]) -> Result<Vec<u32>> {
        coords_in(&self.span, x)
    }

    fn global(&self, x: &[u32]) -> Vec<u32> {
        self.inclusion.apply(x)
    }
}

/// `aAa` presented as the deformation of `eAe` by `s = eae`.
#[derive(Clone, Debug)]
pub struct DeformedPresentation {
    /// `eAe`, in the coordinates of its span in `A`.
    pub eae: ScAlgebra,
    pub eae_span: Subspace,
    /// `eae` in the coordinates of `eAe`.
    pub s: Vec<u32>,
    /// `(eAe)_s`.
    pub deformed: ScAlgebra,
    /// `aAa` with the product of `A`.
    pub corner: ScAlgebra,
    pub corner_span: Subspace,
}

/// The isomorphism `aAa -> (eAe)_{eae}`, `x -> x b`, and its inverse `x -> x a`.
pub fn corner_iso_deformed(
    alg: &ScAlgebra,
    cert: &RegularCertificate,
) -> Result<(DeformedPresentation, AlgebraMap, AlgebraMap)> {
    alg.unity_or_err()?;
    if !cert.verify(alg) {
        return Err(Error::NotRegularWitness);
    }
    let (a, b, e) = (&cert.a, &cert.b, &cert.e);
    let pe = Peirce::new(alg, e)?;
    let s = pe.local(&alg.mul3(e, a, e))?;
    let deformed = pe.algebra.deform(&s.clone().into())?;
    let corner_span = corner_subspace(alg, a)?;
    let (corner, _) = alg.subalgebra(&corner_span)?;
    let f = alg.field();

    let mut to_def = Vec::with_capacity(corner.dim());
    for x in corner_span.basis() {
        to_def.push(pe.local(&alg.mul_raw(x, b))?);
    }
    let to_def = AlgebraMap::from_images(f, deformed.dim(), to_def);
    let mut from_def = Vec::with_capacity(deformed.dim());
    for x in pe.span.basis() {
        from_def.push(coords_in(&corner_span, &alg.mul_raw(x, a))?);
    }
    let from_def = AlgebraMap::from_images(f, corner.dim(), from_def);

    let round_trip = |m: &AlgebraMap, n: &AlgebraMap| -> Result<bool> {
        Ok(m.compose(n)?.matrix() == &Matrix::identity(f, n.source_dim()))
    };
    if !to_def.is_multiplicative(&corner, &deformed)
        || !from_def.is_multiplicative(&deformed, &corner)
        || !round_trip(&from_def, &to_def)?
        || !round_trip(&to_def, &from_def)?
    {
        return Err(inconsistent(
            "x -> xb and x -> xa are not mutually inverse isomorphisms",
        ));
    }
    Ok((
        DeformedPresentation {
            eae: pe.algebra,
            eae_span: pe.span,
            s,
            deformed,
            corner,
            corner_span,
        },
        to_def,
        from_def,
    ))
}

/// The three isomorphisms around a deformation.
#[derive(Clone, Debug)]
pub struct Lem1Maps {
    /// `A_{usv} -> A_s`, `x -> v x u`.
    pub deformation: AlgebraMap,
    /// `A_e` in block form: coordinates are those of `(1-e)Ae`, `(1-e)A(1-e)`,
    /// `eAe`, `eA(1-e)` in turn, multiplied as the entries (1,2), (1,3),
    /// (2,2), (2,3) of 3x3 block upper-triangular matrices.
    pub triangular: ScAlgebra,
    /// `A_e -> triangular`.
    pub to_triangular: AlgebraMap,
    /// `A_e / J(A_e)` and `eAe / J(eAe)`.
    pub deformed_quotient: ScAlgebra,
    pub corner_quotient: ScAlgebra,
    /// Induced by `x -> exe`.
    pub quotient_iso: AlgebraMap,
}

pub fn lem1_isos(
    alg: &ScAlgebra,
    u: &[u32],
    v: &[u32],
    s: &[u32],
    e: &[u32],
    ctx: &Ctx,
) -> Result<Lem1Maps> {
    let one = alg.unity_or_err()?.coords().to_vec();
    for x in [u, v, s, e] {
        alg.check(&x.to_vec().into())?;
    }
    if !alg.is_invertible(u) || !alg.is_invertible(v) {
        return Err(AlgebraError::NotInvertible.into());
    }
    if !alg.is_idempotent(e) {
        return Err(Error::NotIdempotent);
    }
    let field = alg.field();
    let d = alg.dim();

    let usv = alg.mul3(u, s, v);
    let src = alg.deform(&usv.into())?;
    let tgt = alg.deform(&s.to_vec().into())?;
    let deformation = AlgebraMap::from_fn(field, d, d, |x| alg.mul3(v, x, u));
    if !deformation.is_multiplicative(&src, &tgt) || !deformation.is_bijective() {
        return Err(inconsistent(
            "x -> vxu is not an isomorphism of deformations",
        ));
    }

    let ae = alg.deform(&e.to_vec().into())?;
    let (triangular, to_triangular) = triangular_presentation(alg, &ae, e, &one)?;

    let j1 = radical_of_deformed(alg, e, ctx.brute_cap)?;
    let pe = Peirce::new(alg, e)?;
    let j2 = radical(&pe.algebra, ctx.brute_cap)?;
    let q1 = Quotient::new(&ae, &j1)?;
    let q2 = Quotient::new(&pe.algebra, &j2)?;
    let mut images = Vec::with_capacity(q1.algebra.dim());
    for i in 0..q1.algebra.dim() {
        let mut y = vec![0; q1.algebra.dim()];
        y[i] = 1;
        let x = q1.lift(&y);
        images.push(q2.project(&pe.local(&alg.mul3(e, &x, e))?));
    }
    let quotient_iso = AlgebraMap::from_images(field, q2.algebra.dim(), images);
    if !quotient_iso.is_multiplicative(&q1.algebra, &q2.algebra) || !quotient_iso.is_bijective() {
        return Err(inconsistent(
            "x -> exe does not induce an isomorphism of quotients",
        ));
    }
    Ok(Lem1Maps {
        deformation,
        triangular,
        to_triangular,
        deformed_quotient: q1.algebra,
        corner_quotient: q2.algebra,
        quotient_iso,
    })
}

fn triangular_presentation(
    alg: &ScAlgebra,
    ae: &ScAlgebra,
    e: &[u32],
    one: &[u32],
) -> Result<(ScAlgebra, AlgebraMap)> {
    let field = alg.field();
    let d = alg.dim();
    let e1 = alg.sub(one, e);
    // Entry positions (1,2), (1,3), (2,2), (2,3).
    let sides: [(&[u32], &[u32]); 4] = [(&e1, e), (&e1, &e1), (e, e), (e, &e1)];
    let parts: Vec<Subspace> = sides
        .iter()
        .map(|(l, r)| peirce_space(alg, l, r))
        .collect::<std::result::Result<_, _>>()?;
    let offsets: Vec<usize> = parts
        .iter()
        .scan(0, |acc, p| {
            let o = *acc;
            *acc += p.dim();
            Some(o)
        })
        .collect();
    if parts.iter().map(Subspace::dim).sum::<usize>() != d {
        return Err(inconsistent("Peirce spaces do not decompose A"));
    }
    // (row block, column block) of each part; the product of parts i and j
    // lands in part k when col(i) = row(j).
    let pos = [(1, 2), (1, 3), (2, 2), (2, 3)];
    let target = |i: usize, j: usize| -> Option<usize> {
        let (r, c) = pos[i];
        let (r2, c2) = pos[j];
        (c == r2).then(|| pos.iter().position(|&q| q == (r, c2)).expect("closed"))
    };
    let component = |idx: usize| -> (usize, usize) {
        let k = offsets.iter().rposition(|&o| o <= idx).expect("offset 0");
        (k, idx - offsets[k])
    };
    let mut table = vec![0u32; d * d * d];
    for i in 0..d {
        let (ci, li) = component(i);
        let x = &parts[ci].basis()[li];
        for j in 0..d {
            let (cj, lj) = component(j);
            let Some(ck) = target(ci, cj) else { continue };
            let y = &parts[cj].basis()[lj];
            let c = coords_in(&parts[ck], &alg.mul_raw(x, y))?;
            let row = &mut table[(i * d + j) * d..(i * d + j + 1) * d];
            row[offsets[ck]..offsets[ck] + c.len()].copy_from_slice(&c);
        }
    }
    let tri = ScAlgebra::from_parts(
        field,
        d,
        table,
        None,
        Some(format!(
            "block triangular form of a deformation of {}",
            alg.describe()
        )),
    );
    let map = AlgebraMap::from_fn(field, d, d, |x| {
        let mut out = vec![0u32; d];
        for (k, (l, r)) in sides.iter().enumerate() {
            let c = parts[k]
                .coords(&alg.mul3(l, x, r))
                .expect("Peirce component");
            out[offsets[k]..offsets[k] + c.len()].copy_from_slice(&c);
        }
        out
    });
    // The inverse adds the entries back up.
    let sum_back = AlgebraMap::from_fn(field, d, d, |y| {
        let mut out = vec![0u32; d];
        for k in 0..4 {
            let x = parts[k].combine(&y[offsets[k]..offsets[k] + parts[k].dim()]);
            out = alg.add(&out, &x);
        }
        out
    });
    let id = Matrix::identity(field, d);
    if !map.is_multiplicative(ae, &tri) || sum_back.compose(&map)?.matrix() != &id {
        return Err(inconsistent(
            "block triangular presentation failed verification",
        ));
    }
    Ok((tri, map))
}

/// Structure of `aAa` in a semiprime algebra.
#[derive(Clone, Debug)]
pub struct ACornerStructure {
    pub corner_span: Subspace,
    pub corner: ScAlgebra,
    /// `{x in aAa : axa = 0}`, in the coordinates of `A`.
    pub radical: Subspace,
    pub quotient_structure: WedderburnStructure,
    pub rank_a2: usize,
    /// `a = e u` and `a^2 = f v` with `f = efe`.
    pub e: Vec<u32>,
    pub u: Vec<u32>,
    pub f: Vec<u32>,
    pub v: Vec<u32>,
    pub v_inv: Vec<u32>,
    pub f_span: Subspace,
    /// `x -> a x a v^-1` from `aAa` onto `fAf`, in the coordinates of the spans.
    pub induced: AlgebraMap,
}

fn require_semiprime(alg: &ScAlgebra, ctx: &Ctx) -> Result<()> {
    alg.unity_or_err()?;
    if !radical(alg, ctx.brute_cap)?.is_zero() {
        return Err(Error::NotSemiprime);
    }
    Ok(())
}

fn require_finite_rank(alg: &ScAlgebra, a: &[u32], ctx: &mut Ctx) -> Result<usize> {
    right_rank(alg, a, ctx)?
        .value
        .finite()
        .ok_or_else(|| Error::InfiniteRank("a".into()))
}

/// `eae = f w` inside `eAe` and `v = (w + 1 - e) u`, so that `a^2 = f v` with
/// `v` invertible in `A` and `f = efe`. Returns `(f, w, v)`.
fn square_factorization(
    alg: &ScAlgebra,
    a: &[u32],
    e: &[u32],
    u: &[u32],
    pe: &Peirce,
    ctx: &mut Ctx,
) -> Result<(Vec<u32>, Vec<u32>, Vec<u32>)> {
    let one = alg.unity_or_err()?.coords().to_vec();
    let s = pe.local(&alg.mul3(e, a, e))?;
    let cert = unit_regular_factorization(&pe.algebra, &s, ctx)?;
    let f = pe.global(&cert.e);
    let w = pe.global(&cert.u);
    let v = alg.mul_raw(&alg.add(&w, &alg.sub(&one, e)), u);
    if alg.mul_raw(a, a) != alg.mul_raw(&f, &v) {
        return Err(inconsistent("a^2 != f v"));
    }
    Ok((f, w, v))
}

pub fn a_corner_structure(alg: &ScAlgebra, a: &[u32], ctx: &mut Ctx) -> Result<ACornerStructure> {
    require_semiprime(alg, ctx)?;
    alg.check(&a.to_vec().into())?;
    require_finite_rank(alg, a, ctx)?;
    let field = alg.field();
    let ur = unit_regular_factorization(alg, a, ctx)?;
    let e = ur.e.clone();
    let pe = Peirce::new(alg, &e)?;
    let (f, _w, v) = square_factorization(alg, a, &e, &ur.u, &pe, ctx)?;
    let v_inv = alg
        .inverse(&v)
        .ok_or_else(|| inconsistent("v is not invertible"))?;

    let corner_span = corner_subspace(alg, a)?;
    let (corner, _) = alg.subalgebra(&corner_span)?;
    let sandwich = AlgebraMap::from_images(
        field,
        alg.dim(),
        corner_span
            .basis()
            .iter()
            .map(|x| alg.mul3(a, x, a))
            .collect(),
    );
    let local_rad = sandwich.kernel();
    let rad = Subspace::from_vectors(
        field,
        alg.dim(),
        local_rad.basis().iter().map(|c| corner_span.combine(c)),
    );
    if is_two_sided_ideal(&corner, &local_rad) {
        let q = Quotient::new(&corner, &local_rad)?;
        if !radical(&q.algebra, ctx.brute_cap)?.is_zero() {
            return Err(inconsistent("aAa modulo {axa = 0} is not semisimple"));
        }
    } else {
        return Err(inconsistent("{x in aAa : axa = 0} is not an ideal"));
    }
    let quotient = Quotient::new(&corner, &local_rad)?;
    let quotient_structure = structure_or_empty(&quotient.algebra)?;

    let a2 = alg.mul_raw(a, a);
    let rank_a2 = right_rank(alg, &a2, ctx)?
        .value
        .finite()
        .ok_or_else(|| inconsistent("a^2 of infinite rank below a of finite rank"))?;
    if quotient_structure.total_n() != rank_a2 {
        return Err(inconsistent(format!(
            "block sizes sum to {} but rank a^2 = {rank_a2}",
            quotient_structure.total_n()
        )));
    }

    let f_span = peirce_space(alg, &f, &f)?;
    let (f_alg, _) = alg.subalgebra(&f_span)?;
    let mut images = Vec::with_capacity(corner.dim());
    for x in corner_span.basis() {
        let y = alg.mul_raw(&alg.mul3(a, x, a), &v_inv);
        images.push(coords_in(&f_span, &y)?);
    }
    let induced = AlgebraMap::from_images(field, f_span.dim(), images);
    if !induced.is_multiplicative(&corner, &f_alg)
        || induced.kernel() != local_rad
        || induced.rank() != f_span.dim()
    {
        return Err(inconsistent("x -> a x a v^-1 does not induce aAa/J = fAf"));
    }
    Ok(ACornerStructure {
        corner_span,
        corner,
        radical: rad,
        quotient_structure,
        rank_a2,
        e,
        u: ur.u,
        f,
        v,
        v_inv,
        f_span,
        induced,
    })
}

/// The five equivalent conditions for `aAa` to be semiprime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemiprimeEquivalences {
    pub corner_semiprime: bool,
    pub rank_square_equals_rank: bool,
    pub square_witnesses: bool,
    pub radical_zero: bool,
    pub matrix_form: bool,
    pub rank_a: usize,
    pub rank_a2: usize,
    /// `b, c` with `a = a^2 b = c a^2` when they exist.
    pub witnesses: Option<(Vec<u32>, Vec<u32>)>,
}

impl SemiprimeEquivalences {
    pub fn values(&self) -> [bool; 5] {
        [
            self.corner_semiprime,
            self.rank_square_equals_rank,
            self.square_witnesses,
            self.radical_zero,
            self.matrix_form,
        ]
    }

    pub fn all_agree(&self) -> bool {
        let v = self.values();
        v.iter().all(|&x| x == v[0])
    }
}

pub fn semiprime_equivalences(
    alg: &ScAlgebra,
    a: &[u32],
    ctx: &mut Ctx,
) -> Result<SemiprimeEquivalences> {
    let structure = a_corner_structure(alg, a, ctx)?;
    let rank_a = require_finite_rank(alg, a, ctx)?;
    let corner_semiprime = radical(&structure.corner, ctx.brute_cap)?.is_zero();
    let witnesses = match square_witnesses(alg, a) {
        Ok(w) => Some(w),
        Err(Error::NoWitness) => None,
        Err(e) => return Err(e),
    };
    let radical_zero = structure.radical.is_zero();
    let matrix_form = radical_zero && {
        let s = if structure.corner.dim() == 0 {
            structure_or_empty(&structure.corner)?
        } else {
            wedderburn_structure(&structure.corner, ctx)?
        };
        s.total_n() == rank_a
    };
    let out = SemiprimeEquivalences {
        corner_semiprime,
        rank_square_equals_rank: structure.rank_a2 == rank_a,
        square_witnesses: witnesses.is_some(),
        radical_zero,
        matrix_form,
        rank_a,
        rank_a2: structure.rank_a2,
        witnesses,
    };
    if !out.all_agree() {
        return Err(inconsistent(format!(
            "semiprime conditions disagree: {:?}",
            out.values()
        )));
    }
    Ok(out)
}

/// One ideal `I_j` (`j >= 1`) of the decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealComponent {
    /// In the coordinates of `A`, inside `aAa`.
    pub ideal: Subspace,
    /// `N_j = J(I_j)`.
    pub radical: Subspace,
    pub n: usize,
    /// Degree of the field `I_j / N_j` is a matrix algebra over.
    pub q_degree: usize,
}

/// `aAa = I_0 + I_1 + ... + I_k` with all certificates.
#[derive(Clone, Debug)]
pub struct CornerDecomposition {
    /// `aAa` as an algebra, with its span in `A`.
    pub for_algebra: ScAlgebra,
    pub corner_span: Subspace,
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub c: Vec<u32>,
    pub e: Vec<u32>,
    pub f: Vec<u32>,
    pub w: Vec<u32>,
    pub w_inv: Vec<u32>,
    pub f_parts: Vec<Vec<u32>>,
    pub f_0: Vec<u32>,
    pub i0: Subspace,
    pub ideals: Vec<IdealComponent>,
    pub rank_a2: RankValue,
    pub ledger: Ledger,
    /// `(eAe)_f -> aAa`, `x -> w^-1 x a`, in span coordinates.
    pub back_map: AlgebraMap,
    /// Working data in the coordinates of `eAe`.
    pub eae: ScAlgebra,
    pub eae_span: Subspace,
    pub deformed: ScAlgebra,
    pub f_local: Vec<u32>,
    pub ideals_local: Vec<Subspace>,
    pub radicals_local: Vec<Subspace>,
    pub i0_local: Subspace,
}

impl CornerDecomposition {
    pub fn is_certified(&self) -> bool {
        self.ledger.all_passed()
    }

    pub fn k(&self) -> usize {
        self.ideals.len()
    }

    /// Block parameters `(n_j, q_degree_j)` in order.
    pub fn shape(&self) -> Vec<(usize, usize)> {
        self.ideals.iter().map(|i| (i.n, i.q_degree)).collect()
    }
}

/// Runs the decomposition. Requires `a` and `a^2` regular and `a^2` in the
/// right socle; certificate failures are reported in the ledger, not as errors.
pub fn main_decompose(alg: &ScAlgebra, a: &[u32], ctx: &mut Ctx) -> Result<CornerDecomposition> {
    decompose(alg, a, ctx, true)
}

/// As [`main_decompose`] but without the socle condition on `a^2`: the
/// pipeline runs as far as it can and the ledger shows what breaks.
pub fn main_decompose_unchecked(
    alg: &ScAlgebra,
    a: &[u32],
    ctx: &mut Ctx,
) -> Result<CornerDecomposition> {
    decompose(alg, a, ctx, false)
}

fn decompose(
    alg: &ScAlgebra,
    a: &[u32],
    ctx: &mut Ctx,
    require_socle: bool,
) -> Result<CornerDecomposition> {
    alg.unity_or_err()?;
    alg.check(&a.to_vec().into())?;
    let field = alg.field();
    let a2 = alg.mul_raw(a, a);
    let cert_a = inner_inverse(alg, a).map_err(|_| Error::NotRegular("a".into()))?;
    let cert_a2 = inner_inverse(alg, &a2).map_err(|_| Error::NotRegular("a^2".into()))?;
    let socle = SocleData::new(alg, Side::Right, ctx)?;
    let rank_a2 = socle.rank(&a2)?;
    if require_socle && !rank_a2.is_finite() {
        return Err(Error::InfiniteSquareRank);
    }
    let (b, c, e) = (cert_a.b.clone(), cert_a2.b.clone(), cert_a.e.clone());
    let mut ledger = Ledger::new();

    // (eAe)_{eae} with its regularity witness eace.
    let pe = Peirce::new(alg, &e)?;
    let cdim = pe.algebra.dim();
    let eae = alg.mul3(&e, a, &e);
    let eace = alg.mul3(&alg.mul_raw(&e, a), &c, &e);
    ledger.record("eae (eace) eae = eae", alg.mul3(&eae, &eace, &eae) == eae);
    let s = pe.local(&eae)?;
    let ur = unit_regular_factorization(&pe.algebra, &s, ctx)?;
    let (f_c, w_c, w_inv_c) = (ur.e, ur.u, ur.u_inv);
    let unity_c = pe.algebra.unity_or_err()?.coords().to_vec();
    let f0_c = pe.algebra.sub(&unity_c, &f_c);
    let cx = &pe.algebra;
    let d_alg = cx.deform(&f_c.clone().into())?;

    // Blocks of fCf give f_1, ..., f_k.
    let f_span = peirce_space(cx, &f_c, &f_c)?;
    let (f_alg, f_incl) = cx.subalgebra(&f_span)?;
    if f_alg.dim() > 0 && !radical(&f_alg, ctx.brute_cap)?.is_zero() {
        return Err(Error::CornerNotSemisimple);
    }
    let f_struct = structure_or_empty(&f_alg)?;
    let f_parts_c: Vec<Vec<u32>> = f_struct.blocks.iter().map(|b| f_incl.apply(&b.z)).collect();

    let pc = |l: &[u32], r: &[u32]| peirce_space(cx, l, r);
    let mut ideals_c = Vec::with_capacity(f_parts_c.len());
    let mut radicals_c = Vec::with_capacity(f_parts_c.len());
    for (j, fj) in f_parts_c.iter().enumerate() {
        let ij = subspace_product(cx, &pc(&unity_c, fj)?, &pc(fj, &unity_c)?)?;
        let gen = Subspace::from_vectors(field, cdim, [fj.clone()]);
        ledger.record(
            format!(
                "I_{} is the ideal of (eAe)_f generated by f_{}",
                j + 1,
                j + 1
            ),
            two_sided_ideal(&d_alg, &gen)? == ij,
        );
        let nj = sum_all(
            field,
            cdim,
            &[
                &pc(fj, &f0_c)?,
                &pc(&f0_c, fj)?,
                &subspace_product(cx, &pc(&f0_c, fj)?, &pc(fj, &f0_c)?)?,
            ],
        );
        ideals_c.push(ij);
        radicals_c.push(nj);
    }
    let f0cfcf0 = subspace_product(cx, &pc(&f0_c, &f_c)?, &pc(&f_c, &f0_c)?)?;
    let i0_c = f0cfcf0.complement_within(&pc(&f0_c, &f0_c)?)?;

    certify(
        &mut ledger,
        cx,
        &d_alg,
        &f_c,
        &f0_c,
        &f0cfcf0,
        &i0_c,
        &ideals_c,
        &radicals_c,
        &f_struct,
        ctx,
    )?;
    let n_sum: usize = f_struct.blocks.iter().map(|b| b.n).sum();
    match rank_a2 {
        RankValue::Finite(r) => ledger.record_detail(
            "sum of n_j = rank a^2",
            n_sum == r,
            format!("{n_sum} vs {r}"),
        ),
        RankValue::Infinite => ledger.record_detail(
            "sum of n_j = rank a^2",
            false,
            format!("{n_sum} vs infinite"),
        ),
    };

    // Back to aAa.
    let corner_span = corner_subspace(alg, a)?;
    let (corner, _) = alg.subalgebra(&corner_span)?;
    let w_inv = pe.global(&w_inv_c);
    let mut images = Vec::with_capacity(cdim);
    for x in pe.span.basis() {
        images.push(coords_in(&corner_span, &alg.mul3(&w_inv, x, a))?);
    }
    let back_map = AlgebraMap::from_images(field, corner.dim(), images);
    ledger.record(
        "x -> w^-1 x a is an isomorphism (eAe)_f -> aAa",
        back_map.is_isomorphism(&d_alg, &corner),
    );
    let push = |s: &Subspace| -> Subspace {
        Subspace::from_vectors(
            field,
            alg.dim(),
            s.basis()
                .iter()
                .map(|x| corner_span.combine(&back_map.apply(x))),
        )
    };
    let i0 = push(&i0_c);
    let ideals: Vec<IdealComponent> = ideals_c
        .iter()
        .zip(&radicals_c)
        .zip(&f_struct.blocks)
        .map(|((i, n), blk)| IdealComponent {
            ideal: push(i),
            radical: push(n),
            n: blk.n,
            q_degree: blk.e,
        })
        .collect();
    let mut pushed: Vec<&Subspace> = ideals.iter().map(|c| &c.ideal).collect();
    pushed.push(&i0);
    ledger.record(
        "I_0 + I_1 + ... + I_k = aAa",
        sum_all(field, alg.dim(), &pushed) == corner_span,
    );

    Ok(CornerDecomposition {
        for_algebra: corner,
        corner_span,
        a: a.to_vec(),
        b,
        c,
        e,
        f: pe.global(&f_c),
        w: pe.global(&w_c),
        w_inv,
        f_parts: f_parts_c.iter().map(|x| pe.global(x)).collect(),
        f_0: pe.global(&f0_c),
        i0,
        ideals,
        rank_a2,
        ledger,
        back_map,
        eae: pe.algebra,
        eae_span: pe.span,
        deformed: d_alg,
        f_local: f_c,
        ideals_local: ideals_c,
        radicals_local: radicals_c,
        i0_local: i0_c,
    })
}

#[allow(clippy::too_many_arguments)]
fn certify(
    ledger: &mut Ledger,
    cx: &ScAlgebra,
    d_alg: &ScAlgebra,
    f_c: &[u32],
    f0_c: &[u32],
    f0cfcf0: &Subspace,
    i0: &Subspace,
    ideals: &[Subspace],
    radicals: &[Subspace],
    f_struct: &WedderburnStructure,
    ctx: &Ctx,
) -> Result<()> {
    let field = cx.field();
    let cdim = cx.dim();
    let mut all: Vec<&Subspace> = vec![i0];
    all.extend(ideals.iter());

    let total = sum_all(field, cdim, &all);
    ledger.record("I_0 + ... + I_k spans eAe", total.is_full());
    let dims: usize = all.iter().map(|s| s.dim()).sum();
    ledger.record_detail(
        "dimensions add up",
        dims == cdim,
        format!("{dims} vs {cdim}"),
    );
    for i in 0..all.len() {
        let others: Vec<&Subspace> = (0..all.len()).filter(|&j| j != i).map(|j| all[j]).collect();
        let rest = sum_all(field, cdim, &others);
        ledger.record(
            format!("I_{i} meets the sum of the others trivially"),
            all[i].intersect(&rest)?.is_zero(),
        );
    }
    let pc = |l: &[u32], r: &[u32]| peirce_space(cx, l, r);
    let direct1 = sum_all(
        field,
        cdim,
        &[&pc(f_c, f_c)?, &pc(f_c, f0_c)?, &pc(f0_c, f_c)?, f0cfcf0],
    );
    let sum_ij = sum_all(field, cdim, &all[1..]);
    ledger.record(
        "I_1 + ... + I_k = fCf + fCf_0 + f_0Cf + f_0CfCf_0",
        sum_ij == direct1,
    );
    for (i, s) in all.iter().enumerate() {
        ledger.record(
            format!("I_{i} is an ideal of (eAe)_f"),
            is_two_sided_ideal(d_alg, s),
        );
    }
    ledger.record("I_0 * I_0 = 0", subspace_product(d_alg, i0, i0)?.is_zero());
    for i in 0..all.len() {
        for j in 0..all.len() {
            if i != j {
                ledger.record(
                    format!("I_{i} * I_{j} = 0"),
                    subspace_product(d_alg, all[i], all[j])?.is_zero(),
                );
            }
        }
    }
    for (j, ((ij, nj), blk)) in ideals
        .iter()
        .zip(radicals)
        .zip(&f_struct.blocks)
        .enumerate()
    {
        let j = j + 1;
        let idx = nilpotency_index(d_alg, nj)?;
        ledger.record_detail(
            format!("N_{j}^3 = 0"),
            idx.is_some_and(|k| k <= 3),
            idx.map_or("not nilpotent".into(), |k| format!("nilpotency index {k}")),
        );
        let (ij_alg, _) = d_alg.subalgebra(ij)?;
        let n_loc = localize(ij, nj)?;
        let jr = radical(&ij_alg, ctx.brute_cap)?;
        ledger.record(format!("N_{j} = J(I_{j})"), jr == n_loc);
        let shape = match Quotient::new(&ij_alg, &n_loc) {
            Ok(q) => structure_or_empty(&q.algebra).map(|s| s.shape()).ok(),
            Err(_) => None,
        };
        ledger.record_detail(
            format!("I_{j}/N_{j} is {}", describe_shape(&[(blk.n, blk.e)])),
            shape.as_deref() == Some(&[(blk.n, blk.e)][..]),
            shape.map_or("not computable".into(), |s| describe_shape(&s)),
        );
    }
    Ok(())
}

/// Input to [`verify_converse`]: ideals of `aAa` in the coordinates of `A`.
#[derive(Clone, Debug)]
pub struct ConverseInput {
    pub i0: Subspace,
    /// `(I_j, N_j)` with `N_j` the claimed radical of `I_j`.
    pub ideals: Vec<(Subspace, Subspace)>,
}

impl From<&CornerDecomposition> for ConverseInput {
    fn from(d: &CornerDecomposition) -> Self {
        Self {
            i0: d.i0.clone(),
            ideals: d
                .ideals
                .iter()
                .map(|c| (c.ideal.clone(), c.radical.clone()))
                .collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConverseReport {
    pub rank_a2: usize,
    pub shape: Vec<(usize, usize)>,
    /// Idempotents `g_j` in `I_j` lifting the unity of `I_j/N_j`.
    pub lifts: Vec<Vec<u32>>,
    pub ledger: Ledger,
}

fn violation(msg: impl Into<String>) -> Error {
    Error::HypothesisViolation(msg.into())
}

/// Checks that the given ideals satisfy the decomposition conditions and
/// deduces the rank of `a^2` from them, then compares with the rank module.
pub fn verify_converse(
    alg: &ScAlgebra,
    a: &[u32],
    input: &ConverseInput,
    ctx: &mut Ctx,
) -> Result<ConverseReport> {
    require_semiprime(alg, ctx)?;
    alg.check(&a.to_vec().into())?;
    let field = alg.field();
    let mut ledger = Ledger::new();
    let a2 = alg.mul_raw(a, a);
    let c = inner_inverse(alg, &a2)
        .map_err(|_| Error::NotRegular("a^2".into()))?
        .b;
    let k_span = corner_subspace(alg, a)?;
    let (k_alg, _) = alg.subalgebra(&k_span)?;
    let kd = k_span.dim();

    let loc = |s: &Subspace, what: &str| {
        localize(&k_span, s).map_err(|_| violation(format!("{what} is not contained in aAa")))
    };
    let i0 = loc(&input.i0, "I_0")?;
    let mut ideals = Vec::with_capacity(input.ideals.len());
    for (j, (ij, nj)) in input.ideals.iter().enumerate() {
        ideals.push((
            loc(ij, &format!("I_{}", j + 1))?,
            loc(nj, &format!("N_{}", j + 1))?,
        ));
    }

    let mut all: Vec<&Subspace> = vec![&i0];
    all.extend(ideals.iter().map(|(i, _)| i));
    let dims: usize = all.iter().map(|s| s.dim()).sum();
    if !sum_all(field, kd, &all).is_full() || dims != kd {
        return Err(violation(
            "(i) aAa is not the direct sum of the given ideals",
        ));
    }
    ledger.record("(i) aAa = I_0 + ... + I_k, direct", true);
    for (i, s) in all.iter().enumerate() {
        if !is_two_sided_ideal(&k_alg, s) {
            return Err(violation(format!("(i) I_{i} is not an ideal of aAa")));
        }
    }
    if !subspace_product(&k_alg, &i0, &i0)?.is_zero() {
        return Err(violation("(ii) I_0^2 != 0"));
    }
    ledger.record("(ii) I_0^2 = 0", true);

    let mut shape = Vec::with_capacity(ideals.len());
    let mut lifts = Vec::with_capacity(ideals.len());
    for (j, (ij, nj)) in ideals.iter().enumerate() {
        let j = j + 1;
        if !nj.is_subspace_of(ij) {
            return Err(violation(format!("(iii) N_{j} is not inside I_{j}")));
        }
        let (ij_alg, ij_incl) = k_alg.subalgebra(ij)?;
        let n_loc = localize(ij, nj)?;
        if !is_two_sided_ideal(&ij_alg, &n_loc) {
            return Err(violation(format!("(iii) N_{j} is not an ideal of I_{j}")));
        }
        if !nilpotency_index(&ij_alg, &n_loc)?.is_some_and(|k| k <= 3) {
            return Err(violation(format!("(iii) N_{j}^3 != 0")));
        }
        ledger.record(format!("(iii) N_{j}^3 = 0"), true);
        let q = Quotient::new(&ij_alg, &n_loc)?;
        let blocks = match structure_or_empty(&q.algebra) {
            Ok(s) if s.blocks.len() == 1 && radical(&q.algebra, ctx.brute_cap)?.is_zero() => {
                s.blocks
            }
            _ => return Err(violation(format!("(iv) I_{j}/N_{j} is not simple"))),
        };
        let (n, deg) = (blocks[0].n, blocks[0].e);
        ledger.record(
            format!("(iv) I_{j}/N_{j} = {}", describe_shape(&[(n, deg)])),
            true,
        );

        let unity_q = q.algebra.unity_or_err()?.coords().to_vec();
        let g_loc = lift_idempotent(&ij_alg, &n_loc, &q.lift(&unity_q))?;
        let g = k_span.combine(&ij_incl.apply(&g_loc));
        let gs = corner_structure_of_idempotent(alg, &g, ctx)?;
        ledger.record_detail(
            format!("g_{j}Ag_{j} = {}", describe_shape(&[(n, deg)])),
            gs.shape() == vec![(n, deg)],
            describe_shape(&gs.shape()),
        );
        let g_k = Subspace::from_vectors(field, kd, [coords_in(&k_span, &g)?]);
        ledger.record(
            format!("I_{j} is generated by g_{j}"),
            &two_sided_ideal(&k_alg, &g_k)? == ij,
        );
        shape.push((n, deg));
        lifts.push(g);
    }

    let aca = alg.mul3(a, &c, a);
    let prod = alg.mul3(
        &alg.mul_raw(&a2, &c),
        &aca,
        &alg.mul_raw(a, &alg.mul_raw(&c, &a2)),
    );
    ledger.record("a^2 = (a^2ca)(aca)(aca^2)", prod == a2);
    let a2_loc = k_span.coords(&a2);
    let sum_ij = sum_all(field, kd, &all[1..]);
    ledger.record(
        "a^2 lies in I_1 + ... + I_k",
        a2_loc.is_some_and(|x| sum_ij.contains(&x)),
    );

    let rank_a2: usize = shape.iter().map(|&(n, _)| n).sum();
    let computed = right_rank(alg, &a2, ctx)?.value;
    ledger.record_detail(
        "rank a^2 agrees with the rank module",
        computed == RankValue::Finite(rank_a2),
        format!("{rank_a2} vs {computed}"),
    );
    Ok(ConverseReport {
        rank_a2,
        shape,
        lifts,
        ledger,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiveShape {
    pub m: usize,
    pub n: usize,
    pub q_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeadShape {
    pub m: usize,
    pub q_degree: usize,
}

/// Shapes of the ideals when `a` itself has finite rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeReport {
    pub live: Vec<LiveShape>,
    /// Blocks of `eAe` that `f` misses; together they make up `I_0`.
    pub dead: Vec<DeadShape>,
    pub rank_a: usize,
    pub identity_holds: bool,
    pub matches_decomposition: bool,
}

pub fn finite_corner_shapes(
    alg: &ScAlgebra,
    a: &[u32],
    decomp: &CornerDecomposition,
    ctx: &mut Ctx,
) -> Result<ShapeReport> {
    let rank_a = require_finite_rank(alg, a, ctx)?;
    let cx = &decomp.eae;
    let structure = if cx.dim() == 0 {
        structure_or_empty(cx)?
    } else {
        wedderburn_structure(cx, ctx)?
    };
    let mut live = Vec::new();
    let mut dead = Vec::new();
    for blk in &structure.blocks {
        let h = cx.mul_raw(&decomp.f_local, &blk.z);
        if h.iter().all(|&x| x == 0) {
            dead.push(DeadShape {
                m: blk.n,
                q_degree: blk.e,
            });
            continue;
        }
        let hc = crate::algebra::one_sided_ideal(
            cx,
            &Subspace::from_vectors(cx.field(), cx.dim(), [h]),
            Side::Right,
        )?;
        let simple = blk.n * blk.e;
        if hc.dim() % simple != 0 {
            return Err(Error::NonIntegralLength(format!(
                "hC of dimension {} over simple modules of dimension {simple}",
                hc.dim()
            )));
        }
        let n = hc.dim() / simple;
        live.push(LiveShape {
            m: blk.n - n,
            n,
            q_degree: blk.e,
        });
    }
    let total: usize =
        live.iter().map(|s| s.m + s.n).sum::<usize>() + dead.iter().map(|s| s.m).sum::<usize>();
    let mut ours: Vec<(usize, usize)> = live.iter().map(|s| (s.n, s.q_degree)).collect();
    let mut theirs = decomp.shape();
    ours.sort_unstable();
    theirs.sort_unstable();
    Ok(ShapeReport {
        identity_holds: total == rank_a,
        matches_decomposition: ours == theirs,
        live,
        dead,
        rank_a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MatrixAlgebra;
    use crate::linalg::PrimeField;

    fn full(p: u32, n: usize) -> ScAlgebra {
        let f = PrimeField::new(p).unwrap();
        let gens: Vec<Matrix> = (0..n)
            .flat_map(|i| (0..n).map(move |j| Matrix::unit(f, n, i, j)))
            .collect();
        MatrixAlgebra::new(f, n, &gens).unwrap().to_sc(None)
    }

    fn unit(d: usize, idx: &[usize]) -> Vec<u32> {
        let mut v = vec![0; d];
        for &i in idx {
            v[i] = 1;
        }
        v
    }

    #[test]
    fn deformed_iso_for_e12() {
        let m2 = full(101, 2);
        let cert = inner_inverse(&m2, &unit(4, &[1])).unwrap();
        let (pres, to, from) = corner_iso_deformed(&m2, &cert).unwrap();
        assert_eq!(pres.eae.dim(), 1);
        assert!(pres.deformed.has_trivial_multiplication());
        assert_eq!(to.source_dim(), 1);
        assert_eq!(from.source_dim(), 1);
    }

    #[test]
    fn lem1_in_m2() {
        let m2 = full(101, 2);
        let mut ctx = Ctx::new(3);
        let u = vec![1, 2, 3, 4];
        let v = vec![5, 1, 0, 7];
        let s = ctx.random_in(&Subspace::full(m2.field(), 4));
        let maps = lem1_isos(&m2, &u, &v, &s, &unit(4, &[0]), &ctx).unwrap();
        assert_eq!(maps.triangular.dim(), 4);
        assert_eq!(maps.corner_quotient.dim(), 1);
    }

    #[test]
    fn m3_pipeline() {
        let m3 = full(101, 3);
        let a = unit(9, &[0, 5]);
        let mut ctx = Ctx::new(1);
        let d = main_decompose(&m3, &a, &mut ctx).unwrap();
        assert!(
            d.is_certified(),
            "{:?}",
            d.ledger.failures().collect::<Vec<_>>()
        );
        assert_eq!(d.shape(), vec![(1, 1)]);
        assert_eq!(d.rank_a2, RankValue::Finite(1));
        let conv = verify_converse(&m3, &a, &(&d).into(), &mut ctx).unwrap();
        assert_eq!(conv.rank_a2, 1);
        assert!(conv.ledger.all_passed());
        let shapes = finite_corner_shapes(&m3, &a, &d, &mut ctx).unwrap();
        assert!(shapes.identity_holds && shapes.matches_decomposition);
        assert_eq!(shapes.rank_a, 2);
        let st = a_corner_structure(&m3, &a, &mut ctx).unwrap();
        assert_eq!(st.quotient_structure.shape(), vec![(1, 1)]);
        let eq = semiprime_equivalences(&m3, &a, &mut ctx).unwrap();
        assert_eq!(eq.values(), [false; 5]);
    }

    #[test]
    fn unity_and_nilpotent() {
        let m2 = full(101, 2);
        let mut ctx = Ctx::new(1);
        let one = m2.unity().unwrap().coords().to_vec();
        let d = main_decompose(&m2, &one, &mut ctx).unwrap();
        assert!(d.is_certified());
        assert_eq!(d.shape(), vec![(2, 1)]);
        assert!(d.i0.is_zero());
        let e12 = unit(4, &[1]);
        let st = a_corner_structure(&m2, &e12, &mut ctx).unwrap();
        assert_eq!(st.radical.dim(), 1);
        assert_eq!(st.rank_a2, 0);
        let eq = semiprime_equivalences(&m2, &one, &mut ctx).unwrap();
        assert_eq!(eq.values(), [true; 5]);
    }
}
