//! Seeded theorem tests over random semisimple, block triangular and deformed
//! algebras. Every case recomputes both sides of an identity independently.

use std::collections::BTreeSet;

use rand::Rng;
use serde::Serialize;

use crate::algebra::{
    corner_subspace, one_sided_ideal, peirce_space, subspace_product, two_sided_ideal, ScAlgebra,
    Side,
};
use crate::context::Ctx;
use crate::corner::{a_corner_structure, main_decompose, semiprime_equivalences};
use crate::error::{Error, Result};
use crate::generators::{
    full_matrix_algebra, random_deformed, random_semisimple, random_triangular,
};
use crate::linalg::Subspace;
use crate::radical::{jacobson_radical, radical_of_corner, radical_of_deformed};
use crate::rank::{
    is_minimal_right_ideal, left_rank, minimal_right_decomposition, right_rank, RankValue,
    SocleData,
};
use crate::regular::inner_inverse;
use crate::wedderburn::{corner_structure_of_idempotent, primitive_idempotent_in_block};

pub const DEFAULT_CASES: usize = 200;
pub const SUITE_P: u32 = 101;
pub const MAX_DIM: usize = 20;

/// Result of one case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// The hypotheses of the statement did not hold for the sampled input.
    Vacuous,
    Fail(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub name: &'static str,
    pub statement: &'static str,
    pub cases: usize,
    pub passed: usize,
    pub vacuous: usize,
    pub failed: usize,
    /// Up to five failure descriptions.
    pub failures: Vec<String>,
}

impl TheoremReport {
    pub fn ok(&self) -> bool {
        self.failed == 0 && self.passed > 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub theorems: Vec<TheoremReport>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.theorems.iter().all(TheoremReport::ok)
    }
}

type CaseFn = fn(&ScAlgebra, &mut Ctx) -> Result<Outcome>;

struct Theorem {
    name: &'static str,
    statement: &'static str,
    /// Which families the cases draw from.
    families: &'static [Family],
    case: CaseFn,
}

#[derive(Clone, Copy, Debug)]
enum Family {
    Semisimple,
    Triangular,
    Deformed,
    FullMatrix,
}

const ALL: &[Family] = &[Family::Semisimple, Family::Triangular, Family::Deformed];
const SEMIPRIME: &[Family] = &[Family::Semisimple];

const THEOREMS: &[Theorem] = &[
    Theorem {
        name: "radical_of_deformation",
        statement: "J(A_s) = {x : sxs in J(A)}, and J(A) is inside J(A_s)",
        families: ALL,
        case: radical_of_deformation,
    },
    Theorem {
        name: "radical_of_corner",
        statement: "J(aAa) = {x in aAa : axa in J(A)} for regular a",
        families: ALL,
        case: radical_of_corner_case,
    },
    Theorem {
        name: "corner_of_minimal_right_ideal",
        statement: "eKe is zero or a minimal right ideal of eAe for minimal K",
        families: ALL,
        case: corner_of_minimal,
    },
    Theorem {
        name: "ideal_meets_right_ideal",
        statement: "(f) meet K = K(f) for f idempotent of finite rank and K a right ideal",
        families: ALL,
        case: ideal_meets_right_ideal,
    },
    Theorem {
        name: "left_right_rank",
        statement: "regular a of finite right and left rank has equal ranks",
        families: ALL,
        case: left_right_rank,
    },
    Theorem {
        name: "rank_in_corner",
        statement: "ranks of a in eAe and in A coincide under either finiteness condition",
        families: ALL,
        case: rank_in_corner,
    },
    Theorem {
        name: "idempotent_corner_structure",
        statement: "e of finite rank n: eAe is a product of M_{n_i}(D_i) with sum n_i = n",
        families: ALL,
        case: idempotent_corner,
    },
    Theorem {
        name: "semiprime_equivalences",
        statement: "the five characterizations of a semiprime corner agree",
        families: SEMIPRIME,
        case: semiprime_case,
    },
    Theorem {
        name: "prime_case",
        statement: "in M_n the decomposition has k <= 1",
        families: &[Family::FullMatrix],
        case: prime_case,
    },
    Theorem {
        name: "main_decomposition",
        statement:
            "aAa = I_0 + I_1 + ... + I_k with all certificates, unique ideals, principal generation",
        families: ALL,
        case: main_decomposition_case,
    },
];

pub fn theorem_names() -> Vec<&'static str> {
    THEOREMS.iter().map(|t| t.name).collect()
}

fn build(family: Family, ctx: &mut Ctx) -> Result<ScAlgebra> {
    Ok(match family {
        Family::Semisimple => random_semisimple(SUITE_P, MAX_DIM, ctx)?.to_sc(),
        Family::Triangular => random_triangular(SUITE_P, MAX_DIM, ctx)?.to_sc(),
        Family::Deformed => random_deformed(SUITE_P, MAX_DIM, ctx)?,
        Family::FullMatrix => {
            let n = ctx.rng.gen_range(1..=4);
            full_matrix_algebra(SUITE_P, n)?.to_sc()
        }
    })
}

fn case_seed(seed: u64, name: &str, i: usize) -> u64 {
    // FNV-1a over the name, mixed with the seed and the case index.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name
        .bytes()
        .chain(seed.to_le_bytes())
        .chain((i as u64).to_le_bytes())
    {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Runs the named theorem (or all with `"all"`) for `cases` cases each.
pub fn run(which: &str, seed: u64, cases: usize) -> Result<SuiteReport> {
    let selected: Vec<&Theorem> = THEOREMS
        .iter()
        .filter(|t| which == "all" || t.name == which)
        .collect();
    if selected.is_empty() {
        return Err(Error::UnknownSuite {
            name: which.into(),
            available: theorem_names().join(", "),
        });
    }
    let theorems = selected
        .into_iter()
        .map(|t| run_one(t, seed, cases))
        .collect();
    Ok(SuiteReport { seed, theorems })
}

fn run_one(t: &Theorem, seed: u64, cases: usize) -> TheoremReport {
    let mut report = TheoremReport {
        name: t.name,
        statement: t.statement,
        cases,
        passed: 0,
        vacuous: 0,
        failed: 0,
        failures: Vec::new(),
    };
    for i in 0..cases {
        let mut ctx = Ctx::new(case_seed(seed, t.name, i));
        let family = t.families[i % t.families.len()];
        let outcome = build(family, &mut ctx).and_then(|alg| {
            (t.case)(&alg, &mut ctx).map_err(|e| {
                Error::InternalInconsistency(format!("{} ({}): {e}", alg.describe(), alg.dim()))
            })
        });
        match outcome {
            Ok(Outcome::Pass) => report.passed += 1,
            Ok(Outcome::Vacuous) => report.vacuous += 1,
            Ok(Outcome::Fail(msg)) => record_failure(&mut report, i, msg),
            Err(e) => record_failure(&mut report, i, format!("error: {e}")),
        }
    }
    report
}

fn record_failure(report: &mut TheoremReport, i: usize, msg: String) {
    report.failed += 1;
    if report.failures.len() < 5 {
        report.failures.push(format!("case {i}: {msg}"));
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Outcome::Pass
    } else {
        Outcome::Fail(msg())
    }
}

fn random_element(alg: &ScAlgebra, ctx: &mut Ctx) -> Vec<u32> {
    ctx.random_in(&Subspace::full(alg.field(), alg.dim()))
}

/// A random regular element: either a random element that happens to be
/// regular, or a high power of one (`x^d` is regular in dimension `d`).
pub fn random_regular(alg: &ScAlgebra, ctx: &mut Ctx) -> Vec<u32> {
    let x = random_element(alg, ctx);
    if ctx.rng.gen_bool(0.5) && inner_inverse(alg, &x).is_ok() {
        return x;
    }
    alg.pow_raw(&x, alg.dim().max(1) as u64)
}

/// A random idempotent `ab` for a random regular `a`.
pub fn random_idempotent(alg: &ScAlgebra, ctx: &mut Ctx) -> Result<Vec<u32>> {
    let a = random_regular(alg, ctx);
    Ok(inner_inverse(alg, &a)?.e)
}

fn radical_of_deformation(alg: &ScAlgebra, ctx: &mut Ctx) -> Result<Outcome> {
    let s = random_element(alg, ctx);
    let direct = jacobson_radical(&alg.deform(&s.clone().into())?)?;
    let formula = radical_of_deformed(alg, &s, ctx.brute_cap)?;
    let j = jacobson_radical(alg)?;
    Ok(check(
        direct == formula && j.is_subspace_of(&direct),
        || format!("dims {} vs {}", direct.dim(), formula.dim()),
    ))
}

fn radical_of_corner_case(alg: &ScAlgebra, ctx: &mut Ctx) -> Result<Outcome> {
    let a = random_regular(alg, ctx);
    let b = inner_inverse(alg, &a)?.b;
    let span = corner_subspace(alg, &a)?;
    let (corner, incl) = alg.subalgebra(&span)?;
    let direct = jacobson_radical(&corner)?.image(incl.matrix());
    let formula = radical_of_corner(alg, &a, &b, ctx.brute_cap)?;
    Ok(check(direct == formula, || {
        format!("dims {} vs {}", direct.dim(), formula.dim())
    }))
}

/// A minimal right ideal `a_1 A` from a minimal decomposition of a random
/// socle element, if the socle is nonzero.
fn random_minimal_right_ideal(
    alg: &ScAlgebra,
    data: &SocleData,
    ctx: &mut Ctx,
) -> Result<Option<Subspace>> {
    let x = ctx.random_in(&data.socle);
    if x.iter().all(|&c| c == 0) {
        return Ok(None);
    }
    let dec = data.minimal_decomposition(&x)?;
    let i = ctx.rng.gen_range(0..dec.components.len());
    let gen = Subspace::from_vectors(alg.field(), alg.dim(), [dec.components[i].clone()]);
    Ok(Some(one_sided_ideal(alg, &gen, Side::Right)?))
}

fn corner_of_minimal(alg: &ScAlgebra, ctx: &mut Ctx) -> Result<Outcome> {
    let data = SocleData::new(alg, Side::Right, ctx)?;
    let Some(k) = random_minimal_right_ideal(alg, &data, ctx)? else {
        return Ok(Outcome::Vacuous);
    };
    if data.module_length(&k)? != 1 {
        return Ok(Outcome::Fail("sampled right ideal is not minimal".into()));
    }
    let e = random_idempotent(alg, ctx)?;
    if e.iter().all(|&c| c == 0) {
        return Ok(Outcome::Vacuous);
    }
    let span = peirce_space(alg, &e, &e)?;
    let eke = Subspace::from_vectors(
        alg.field(),
        alg.dim(),
        k.basis().iter().map(|x| alg.mul3(&e, x, &e)),
    );
    if eke.is_zero() {
        return Ok(Outcome::Pass);
    }
    let (corner, _) = alg.subalgebra(&span)?;
    let local = Subspace::from_vectors(
        alg.field(),
        span.dim(),
        eke.basis()
            .iter()
            .map(|v| span.coords(v).expect("inside eAe")),
    );
    let minimal = is_minimal_right_ideal(&corner, &local, ctx)?;
    Ok(check(minimal, || {
        format!("eKe of dimension {} not minimal", eke.dim())
    }))
}

fn ideal_meets_right_ideal(alg: &ScAlgebra, ctx: &mut Ctx) -> Result<Outcome> {
    let data = SocleData::new(alg, Side::Right, ctx)?;
    // A finite-rank idempotent from a regular power of a socle element.
    let x = ctx.random_in(&data.socle);
    let s = alg.pow_raw(&x, alg.dim().max(1) as u64);
    let Ok(cert) = inner_inverse(alg, &s) else {
        return Ok(Outcome::Fail(
            "power of a socle element is not regular".into(),
        ));
    };
    let f = cert.e;
    if f.iter().all(|&c| c == 0) {
        return Ok(Outcome::Vacuous);
    }
    let field = alg.field();
    let gens: Vec<Vec<u32>> = (0..ctx.rng.gen_range(1..=2))
        .map(|_| random_element(alg, ctx))
        .collect();
    let k = one_sided_ideal(
        alg,
        &Subspace::from_vectors(field, alg.dim(), gens),
        Side::Right,
    )?;
    let fi = two_sided_ideal(alg, &Subspace::from_vectors(field, alg.dim(), [f]))?;
    let meet = fi.intersect(&k)?;
    let prod = subspace_product(alg, &k, &fi)?;
    Ok(check(meet == prod, || {
        format!("dims {} vs {}", meet.dim(), prod.dim())
    }))
}

fn left_right_rank(alg: &ScAlgebra, ctx: &mut Ctx) -> Result<Outcome> {
    let a = random_regular(alg, ctx);
    let r = right_rank(alg, &a, ctx)?.value;
    let l = left_rank(alg, &a, ctx)?.value;
    if !r.is_finite() || !l.is_finite() {
        return Ok(Outcome::Vacuous);
    }
    Ok(check(r == l, || format!("right {r} vs left {l}")))
}

fn rank_in_corner(alg: &ScAlgebra, ctx: &mut Ctx) -> Result<Outcome> {
    let e = random_idempotent(alg, ctx)?;
    if e.iter().all(|&c| c == 0) {
        return Ok(Outcome::Vacuous);
    }
    let x = random_element(alg, ctx);
    let exe = alg.mul3(&e, &x, &e);
    let a = if ctx.rng.gen_bool(0.5) {
        alg.pow_raw(&exe, alg.dim() as u64)
    } else {
        exe
    };
    let rank_a = right_rank(alg, &a, ctx)?.value;
    let rank_e = right_rank(alg, &e, ctx)?.value;
    let regular = inner_inverse(alg, &a).is_ok();
    if !(rank_e.is_finite() || (regular && rank_a.is_finite())) {
        return Ok(Outcome::Vacuous);
    }
    let span = peirce_space(alg, &e, &e)?;
    let (corner, _) = alg.subalgebra(&span)?;
    let local = span.coords(&a).expect("a in eAe");
    let rank_c = right_rank(&corner, &local, ctx)?.value;
    Ok(check(rank_c == rank_a, || {
        format!("in eAe {rank_c} vs in A {rank_a}")
    }))
}

fn idempotent_corner(alg: &ScAlgebra, ctx: &mut Ctx) -> Result<Outcome> {
    let e = random_idempotent(alg, ctx)?;
    let RankValue::Finite(n) = right_rank(alg, &e, ctx)?.value else {
        return Ok(Outcome::Vacuous);
    };
    let s = corner_structure_of_idempotent(alg, &e, ctx)?;
    Ok(check(s.total_n() == n, || {
        format!("blocks {:?} vs rank {n}", s.shape())
    }))
}

fn semiprime_case(alg: &ScAlgebra, ctx: &mut Ctx) -> Result<Outcome> {
    let a = random_regular(alg, ctx);
    // Errors out if the five conditions disagree.
    let eq = semiprime_equivalences(alg, &a, ctx)?;
    Ok(check(eq.all_agree(), || format!("{:?}", eq.values())))
}

fn prime_case(alg: &ScAlgebra, ctx: &mut Ctx) -> Result<Outcome> {
    let a = random_regular(alg, ctx);
    let d = main_decompose(alg, &a, ctx)?;
    Ok(check(d.is_certified() && d.k() <= 1, || {
        let failed: Vec<String> = d.ledger.failures().map(|c| c.name.clone()).collect();
        format!("k = {}, failed certificates {failed:?}", d.k())
    }))
}

fn ideal_set(d: &crate::corner::CornerDecomposition) -> BTreeSet<Vec<Vec<u32>>> {
    d.ideals.iter().map(|c| c.ideal.basis().to_vec()).collect()
}

fn main_decomposition_case(alg: &ScAlgebra, ctx: &mut Ctx) -> Result<Outcome> {
    let a = random_regular(alg, ctx);
    let a2 = alg.mul_raw(&a, &a);
    if inner_inverse(alg, &a2).is_err() {
        return Ok(Outcome::Vacuous);
    }
    let d = match main_decompose(alg, &a, ctx) {
        Ok(d) => d,
        Err(Error::InfiniteSquareRank) => return Ok(Outcome::Vacuous),
        Err(e) => return Err(e),
    };
    if !d.is_certified() {
        let failed: Vec<String> = d.ledger.failures().map(|c| c.name.clone()).collect();
        return Ok(Outcome::Fail(format!("certificates failed: {failed:?}")));
    }
    let mut other = Ctx::new(ctx.seed ^ 0x9e37_79b9_7f4a_7c15);
    let d2 = main_decompose(alg, &a, &mut other)?;
    if ideal_set(&d) != ideal_set(&d2)
        || d.i0.dim() != d2.i0.dim()
        || !subspace_product(&d2.deformed, &d2.i0_local, &d2.i0_local)?.is_zero()
    {
        return Ok(Outcome::Fail("decomposition depends on the seed".into()));
    }
    // Principal generation by sampled idempotents g + g r f_0.
    let cx = &d.eae;
    let f_span = peirce_space(cx, &d.f_local, &d.f_local)?;
    let (f_alg, f_incl) = cx.subalgebra(&f_span)?;
    if f_alg.dim() > 0 {
        let structure = crate::wedderburn::structure_unchecked(&f_alg)?;
        let f0 = cx.sub(cx.unity_or_err()?.coords(), &d.f_local);
        for (blk, ij) in structure.blocks.iter().zip(&d.ideals_local) {
            let g = f_incl.apply(&primitive_idempotent_in_block(&f_alg, blk, ctx)?);
            let r = random_element(cx, ctx);
            let h = cx.add(&g, &cx.mul3(&g, &r, &f0));
            if !d.deformed.is_idempotent(&h) || !ij.contains(&h) {
                return Ok(Outcome::Fail(
                    "sampled element is not an idempotent of I_j".into(),
                ));
            }
            let gen = Subspace::from_vectors(cx.field(), cx.dim(), [h]);
            if &two_sided_ideal(&d.deformed, &gen)? != ij {
                return Ok(Outcome::Fail(
                    "I_j is not generated by a sampled idempotent".into(),
                ));
            }
        }
    }
    // Agreement with the structure of aAa modulo its radical when A is semiprime.
    if jacobson_radical(alg)?.is_zero() {
        let st = a_corner_structure(alg, &a, ctx)?;
        let mut x = st.quotient_structure.shape();
        let mut y = d.shape();
        x.sort_unstable();
        y.sort_unstable();
        if x != y {
            return Ok(Outcome::Fail(format!("blocks {x:?} vs {y:?}")));
        }
    }
    Ok(Outcome::Pass)
}

/// Minimal right decompositions are made of rank-one pieces summing to `a`.
pub fn check_minimal_decomposition(alg: &ScAlgebra, a: &[u32], ctx: &mut Ctx) -> Result<bool> {
    let RankValue::Finite(n) = right_rank(alg, a, ctx)?.value else {
        return Ok(true);
    };
    if n == 0 {
        return Ok(true);
    }
    let dec = minimal_right_decomposition(alg, a, ctx)?;
    let total = dec
        .components
        .iter()
        .fold(vec![0; alg.dim()], |acc, x| alg.add(&acc, x));
    let mut ok = total == a && dec.components.len() == n;
    for x in &dec.components {
        ok &= right_rank(alg, x, ctx)?.value == RankValue::Finite(1);
    }
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_theorem_passes_a_few_cases() {
        let report = run("all", 11, 9).unwrap();
        for t in &report.theorems {
            assert_eq!(t.failed, 0, "{}: {:?}", t.name, t.failures);
        }
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run("nope", 0, 1).is_err());
    }
}
