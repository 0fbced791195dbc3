//! One pass/fail line per acceptance criterion, printed by a plain `main`
//! (the target has `harness = false`), so the lines always show up in
//! `cargo test` output.
//!
//! Criterion 2 cannot hold: in the 10x10 block example a^2 lies outside the
//! right socle, so rank a^2 is infinite and the decomposition hypothesis
//! fails. Its line prints FAIL. The test asserts that it fails for exactly
//! that reason, and that every other criterion passes.

use std::process::ExitCode;

use corner_core::algebra::{subspace_product, AlgebraMap, ScAlgebra};
use corner_core::corner::{
    a_corner_structure, finite_corner_shapes, main_decompose, main_decompose_unchecked,
    verify_converse, ConverseInput,
};
use corner_core::generators::{
    block_pattern_span, full_matrix_algebra, m3, paper10, paper10_patterns, remark, t2,
    tiny_corpus, GeneratedAlgebra,
};
use corner_core::linalg::{Matrix, Subspace};
use corner_core::radical::{
    ideals_bruteforce, jacobson_radical, radical, radical_bruteforce, radical_of_corner,
    splits_as_direct_sum_bruteforce,
};
use corner_core::rank::{right_rank, right_rank_bruteforce, RankValue};
use corner_core::regular::inner_inverse;
use corner_core::wedderburn::wedderburn_structure;
use corner_core::{suite, Ctx, Error};

const CAP: u128 = 1 << 20;

struct Verdict {
    passed: bool,
    detail: String,
    /// Set when a failure matches the recorded analysis of an unattainable
    /// criterion.
    explained: bool,
}

impl Verdict {
    fn from_checks(checks: &[(&str, bool)]) -> Self {
        let failed: Vec<&str> = checks
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(n, _)| *n)
            .collect();
        Verdict {
            passed: failed.is_empty(),
            detail: if failed.is_empty() {
                format!("{} checks", checks.len())
            } else {
                format!("failed: {}", failed.join("; "))
            },
            explained: false,
        }
    }
}

fn flat(g: &GeneratedAlgebra, s: &Subspace) -> Subspace {
    let n = g.algebra.size();
    let f = g.algebra.field();
    Subspace::from_vectors(
        f,
        n * n,
        s.basis()
            .iter()
            .map(|v| g.algebra.matrix_of(v).data().to_vec()),
    )
}

fn unit_coords(g: &GeneratedAlgebra, i: usize, j: usize) -> Vec<u32> {
    let f = g.algebra.field();
    g.algebra
        .coords(&Matrix::unit(f, g.algebra.size(), i, j))
        .expect("matrix unit in the algebra")
}

fn criterion_1() -> Verdict {
    let g = paper10(101, 1).unwrap();
    let f = g.algebra.field();
    let m = |l: &str| g.element(l).unwrap().clone();
    let (a, at, a2, a2t) = (m("a"), m("aT"), m("a2"), m("a2T"));
    let mul = |x: &Matrix, y: &Matrix| x.mul(y).unwrap();
    let alg = g.to_sc();
    let ac = g.element_coords("a").unwrap();
    let corner = corner_core::algebra::corner_subspace(&alg, &ac).unwrap();
    let corner_flat = flat(&g, &corner);
    let pat = |b: Vec<(usize, usize)>| block_pattern_span(f, 1, &b);
    let (p_corner, p0, p1, p2) = (
        pat(paper10_patterns::corner()),
        pat(paper10_patterns::i0()),
        pat(paper10_patterns::i1()),
        pat(paper10_patterns::i2()),
    );
    let (corner_alg, _) = alg.subalgebra(&corner).unwrap();
    let j = jacobson_radical(&corner_alg).unwrap();
    let q = corner_core::algebra::Quotient::new(&corner_alg, &j).unwrap();
    let shape = wedderburn_structure(&q.algebra, &Ctx::new(1))
        .unwrap()
        .shape();
    let displayed_sum = p0.sum(&p1).unwrap().sum(&p2).unwrap();
    let meet = p1.intersect(&p2).unwrap();
    Verdict::from_checks(&[
        ("a aT a = a", mul(&mul(&a, &at), &a) == a),
        ("a2 a2T a2 = a2", mul(&mul(&a2, &a2t), &a2) == a2),
        ("a^3 = 0", mul(&a2, &a).is_zero()),
        ("dim aAa = 23", corner.dim() == 23),
        (
            "aAa matches the displayed block support",
            corner_flat == p_corner,
        ),
        (
            "aAa/J(aAa) = GF(101) x GF(101)",
            shape == vec![(1, 1), (1, 1)],
        ),
        (
            "displayed I_0 + I_1 + I_2 = aAa",
            displayed_sum == corner_flat,
        ),
        (
            "displayed pattern sizes 2, 15, 15",
            (p0.dim(), p1.dim(), p2.dim()) == (2, 15, 15),
        ),
        ("dim(I_1 meet I_2) = 9", meet.dim() == 9),
    ])
}

fn criterion_2() -> Verdict {
    let g = paper10(101, 1).unwrap();
    let alg = g.to_sc();
    let a = g.element_coords("a").unwrap();
    let a2 = g.element_coords("a2").unwrap();
    let first = main_decompose(&alg, &a, &mut Ctx::new(1));
    let second = main_decompose(&alg, &a, &mut Ctx::new(2));
    if let (Ok(d1), Ok(d2)) = (&first, &second) {
        let same = d1
            .ideals
            .iter()
            .all(|c| d2.ideals.iter().any(|o| o.ideal == c.ideal))
            && d1.ideals.len() == d2.ideals.len()
            && d1.i0.dim() == d2.i0.dim();
        return Verdict {
            passed: d1.is_certified() && d2.is_certified() && same,
            detail: format!("decomposition shape {:?}", d1.shape()),
            explained: false,
        };
    }
    // The recorded analysis: a^2 E56 = E36 with E56 in J(A), so a^2 does
    // not annihilate J(A) and lies outside the right socle.
    let mut ctx = Ctx::new(1);
    let rank_a2 = right_rank(&alg, &a2, &mut ctx).unwrap().value;
    let j = jacobson_radical(&alg).unwrap();
    let e56 = unit_coords(&g, 4, 5);
    let e36 = unit_coords(&g, 2, 5);
    let witness = j.contains(&e56) && alg.mul_raw(&a2, &e56) == e36;
    let unchecked = main_decompose_unchecked(&alg, &a, &mut Ctx::new(1));
    let explained = matches!(first, Err(Error::InfiniteSquareRank))
        && matches!(second, Err(Error::InfiniteSquareRank))
        && rank_a2 == RankValue::Infinite
        && witness
        && matches!(unchecked, Err(Error::CornerNotSemisimple));
    Verdict {
        passed: false,
        detail: format!(
            "unattainable: rank a^2 = {rank_a2} since a^2 E56 = E36 != 0 with E56 in J(A); \
             main_decompose -> {}; without the socle check -> {}",
            first.err().map(|e| e.to_string()).unwrap_or_default(),
            unchecked.err().map(|e| e.to_string()).unwrap_or_default(),
        ),
        explained,
    }
}

fn criterion_3() -> Verdict {
    let report = suite::run("all", 2024, suite::DEFAULT_CASES).unwrap();
    let summary: Vec<String> = report
        .theorems
        .iter()
        .map(|t| format!("{} {}/{}", t.name, t.passed, t.cases - t.vacuous))
        .collect();
    let failures: Vec<String> = report
        .theorems
        .iter()
        .filter(|t| !t.ok())
        .map(|t| format!("{}: {:?}", t.name, t.failures))
        .collect();
    Verdict {
        passed: report.all_passed() && report.theorems.len() == suite::theorem_names().len(),
        detail: if failures.is_empty() {
            summary.join(", ")
        } else {
            failures.join("; ")
        },
        explained: false,
    }
}

/// Reduces a p = 101 subspace of matrices, with 0/1-defined entries, to a
/// small characteristic via centered representatives.
fn reduce_matrices(
    big: &GeneratedAlgebra,
    s: &Subspace,
    small: &GeneratedAlgebra,
) -> Option<Subspace> {
    let f = small.algebra.field();
    let vecs: Option<Vec<Vec<u32>>> = s
        .basis()
        .iter()
        .map(|v| {
            let m = big.algebra.matrix_of(v);
            let data: Vec<u32> = m
                .data()
                .iter()
                .map(|&x| {
                    let c = if x > 50 { x as i64 - 101 } else { x as i64 };
                    c.rem_euclid(f.p() as i64) as u32
                })
                .collect();
            let m = Matrix::from_data(f, m.rows(), m.cols(), data).ok()?;
            small.algebra.coords(&m)
        })
        .collect();
    Some(Subspace::from_vectors(f, small.algebra.dim(), vecs?))
}

fn all_elements(alg: &ScAlgebra) -> Vec<Vec<u32>> {
    let p = alg.field().p();
    let mut out = vec![vec![]];
    for _ in 0..alg.dim() {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

/// Checks a certified decomposition against the enumerated ideal lattice of
/// the deformed corner: every I_j is an ideal that does not split, and the
/// pieces meet trivially and fill the space.
fn lattice_check(d: &corner_core::corner::CornerDecomposition) -> Result<bool, Error> {
    let dd = &d.deformed;
    let f = dd.field();
    let full = Subspace::full(f, dd.dim());
    let lattice = ideals_bruteforce(dd, &full, CAP)?;
    let mut ok = d.is_certified();
    let mut total = d.i0_local.clone();
    for (i, ij) in d.ideals_local.iter().enumerate() {
        ok &= lattice.contains(ij) && !splits_as_direct_sum_bruteforce(dd, ij, CAP)?;
        ok &= total.intersect(ij)?.is_zero();
        for other in d.ideals_local.iter().skip(i + 1) {
            ok &= subspace_product(dd, ij, other)?.is_zero();
        }
        total = total.sum(ij)?;
    }
    Ok(ok && total == full)
}

fn criterion_4() -> Verdict {
    let mut checks: Vec<(String, bool)> = Vec::new();
    let mut decomposed = 0;
    let big = tiny_corpus(101).unwrap();
    for p in [2u32, 3] {
        for (idx, (g, independent)) in tiny_corpus(p).unwrap().into_iter().enumerate() {
            let alg = g.to_sc();
            let brute = radical_bruteforce(&alg, CAP).unwrap();
            let ok = match jacobson_radical(&alg) {
                Ok(j) => j == brute,
                Err(Error::CharacteristicTooSmall { .. }) if independent => {
                    let (bg, _) = &big[idx];
                    let jb = jacobson_radical(&bg.to_sc()).unwrap();
                    reduce_matrices(bg, &jb, &g) == Some(brute.clone())
                        && radical(&alg, CAP).unwrap() == brute
                }
                Err(Error::CharacteristicTooSmall { .. }) => radical(&alg, CAP).unwrap() == brute,
                Err(_) => false,
            };
            checks.push((format!("radical of {}", g.name), ok));
            if !alg.is_unital() {
                continue;
            }
            let mut rank_ok = true;
            let mut decomp_ok = true;
            for (i, x) in all_elements(&alg).into_iter().enumerate() {
                let mut ctx = Ctx::new(i as u64).with_brute_cap(CAP);
                let r = right_rank(&alg, &x, &mut ctx).map(|r| r.value);
                rank_ok &= r.ok() == right_rank_bruteforce(&alg, &x, CAP).ok();
                match main_decompose(&alg, &x, &mut ctx) {
                    Ok(d) => {
                        decomposed += 1;
                        decomp_ok &= lattice_check(&d).unwrap_or(false);
                    }
                    Err(Error::NotRegular(_) | Error::InfiniteSquareRank) => {}
                    Err(_) => decomp_ok = false,
                }
            }
            checks.push((format!("ranks in {}", g.name), rank_ok));
            checks.push((format!("decompositions in {}", g.name), decomp_ok));
        }
    }
    checks.push(("some decompositions were checked".into(), decomposed > 0));
    let refs: Vec<(&str, bool)> = checks.iter().map(|(n, b)| (n.as_str(), *b)).collect();
    let mut v = Verdict::from_checks(&refs);
    if v.passed {
        v.detail = format!(
            "{}, {decomposed} decompositions against the ideal lattice",
            v.detail
        );
    }
    v
}

fn criterion_5() -> Verdict {
    let mut ctx = Ctx::new(5);
    let t = t2(101).unwrap();
    let ta = t.to_sc();
    let e11 = t.element_coords("E11").unwrap();
    let rank_e11 = right_rank(&ta, &e11, &mut ctx).unwrap().value;
    let e11_corner =
        corner_core::wedderburn::corner_structure_of_idempotent(&ta, &e11, &ctx).map(|s| s.shape());

    let m2 = full_matrix_algebra(101, 2).unwrap();
    let m2a = m2.to_sc();
    let e12 = unit_coords(&m2, 0, 1);
    let st = a_corner_structure(&m2a, &e12, &mut ctx).unwrap();
    let b12 = inner_inverse(&m2a, &e12).unwrap().b;
    let jc = radical_of_corner(&m2a, &e12, &b12, CAP).unwrap();

    let g = m3(101).unwrap();
    let alg = g.to_sc();
    let a = g.element_coords("a").unwrap();
    let a2 = alg.mul_raw(&a, &a);
    let d = main_decompose(&alg, &a, &mut ctx).unwrap();
    let shapes = finite_corner_shapes(&alg, &a, &d, &mut ctx).unwrap();
    let m_total: usize = shapes.live.iter().map(|s| s.m).sum::<usize>()
        + shapes.dead.iter().map(|s| s.m).sum::<usize>();
    let n_total: usize = shapes.live.iter().map(|s| s.n).sum();

    let g3 = m3(3).unwrap();
    let alg3 = g3.to_sc();
    let a3 = g3.element_coords("a").unwrap();
    let a3sq = alg3.mul_raw(&a3, &a3);
    Verdict::from_checks(&[
        (
            "rank E11 in T_2 is infinite",
            rank_e11 == RankValue::Infinite,
        ),
        (
            "E11 T_2 E11 = GF(p)",
            e11_corner.is_ok_and(|s| s == vec![(1, 1)]),
        ),
        (
            "J(aAa) = aAa for E12 in M_2",
            st.radical == st.corner_span && jc == st.corner_span,
        ),
        (
            "rank a = 2 in M_3",
            right_rank(&alg, &a, &mut ctx).unwrap().value == RankValue::Finite(2),
        ),
        (
            "rank a^2 = 1 in M_3",
            right_rank(&alg, &a2, &mut ctx).unwrap().value == RankValue::Finite(1),
        ),
        (
            "k = 1, n_1 = 1",
            d.is_certified() && d.shape() == vec![(1, 1)],
        ),
        (
            "m + n = 2 = rank a",
            shapes.identity_holds && m_total + n_total == 2 && shapes.rank_a == 2,
        ),
        ("brute-force ranks 2 and 1 at p = 3", {
            right_rank_bruteforce(&alg3, &a3, CAP).ok() == Some(RankValue::Finite(2))
                && right_rank_bruteforce(&alg3, &a3sq, CAP).ok() == Some(RankValue::Finite(1))
        }),
    ])
}

fn criterion_6() -> Verdict {
    let g = remark(101).unwrap();
    let alg = g.to_sc();
    let mut ctx = Ctx::new(6);
    let a = g.element_coords("a").unwrap();
    let b = g.element_coords("b").unwrap();
    let ka = corner_core::algebra::corner_subspace(&alg, &a).unwrap();
    let kb = corner_core::algebra::corner_subspace(&alg, &b).unwrap();
    let (ca, _) = alg.subalgebra(&ka).unwrap();
    let (cb, _) = alg.subalgebra(&kb).unwrap();
    // Zero-multiplication algebras of equal dimension: any linear bijection
    // is an isomorphism.
    let iso = AlgebraMap::new(Matrix::identity(alg.field(), ca.dim()));
    Verdict::from_checks(&[
        ("both corners 4-dimensional", ca.dim() == 4 && cb.dim() == 4),
        (
            "both corners have zero multiplication",
            ca.has_trivial_multiplication() && cb.has_trivial_multiplication(),
        ),
        (
            "corners isomorphic",
            ca.dim() == cb.dim() && iso.is_isomorphism(&ca, &cb),
        ),
        (
            "rank a = 1",
            right_rank(&alg, &a, &mut ctx).unwrap().value == RankValue::Finite(1),
        ),
        (
            "rank b = 2",
            right_rank(&alg, &b, &mut ctx).unwrap().value == RankValue::Finite(2),
        ),
    ])
}

fn criterion_7() -> Verdict {
    let t = t2(101).unwrap();
    let ta = t.to_sc();
    let e12 = t.element_coords("E12").unwrap();
    let not_regular = matches!(
        main_decompose(&ta, &e12, &mut Ctx::new(7)),
        Err(Error::NotRegular(_))
    );

    let g = m3(101).unwrap();
    let alg = g.to_sc();
    let a = g.element_coords("a").unwrap();
    let mut ctx = Ctx::new(7);
    let d = main_decompose(&alg, &a, &mut ctx).unwrap();
    let mut input = ConverseInput::from(&d);
    // Replace N_1 by I_1, which is not nilpotent.
    input.ideals[0].1 = input.ideals[0].0.clone();
    let injected = verify_converse(&alg, &a, &input, &mut ctx);
    let violation = matches!(&injected, Err(Error::HypothesisViolation(m)) if m.contains("N_1^3"));

    let small_p = matches!(
        paper10(3, 1),
        Err(Error::CharacteristicTooSmall { p: 3, .. })
    );
    Verdict::from_checks(&[
        ("E12 in T_2 is not regular", not_regular),
        ("injected N_1^3 != 0 is rejected", violation),
        ("block example at p = 3 is rejected", small_p),
    ])
}

type Criterion = fn() -> Verdict;

/// Criteria known to be unattainable, with the analysis in the module docs.
const UNATTAINABLE: &[usize] = &[2];

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 7] = [
        ("block example at p = 101", criterion_1),
        ("decomposition of the block example", criterion_2),
        ("theorem suite, 200 cases each", criterion_3),
        ("brute-force oracles at p = 2, 3", criterion_4),
        ("known values", criterion_5),
        ("equal corners, different ranks", criterion_6),
        ("negative paths", criterion_7),
    ];
    let mut unexpected = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let n = i + 1;
        let v = run();
        println!(
            "criterion {n} ({name}): {}: {}",
            if v.passed { "PASS" } else { "FAIL" },
            v.detail
        );
        let expected_failure = UNATTAINABLE.contains(&n);
        if expected_failure && !(v.explained && !v.passed) {
            unexpected.push(format!(
                "criterion {n} no longer fails for the recorded reason"
            ));
        } else if !expected_failure && !v.passed {
            unexpected.push(format!("criterion {n} failed"));
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: ok (criterion 2 fails as recorded)");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected results: {}", unexpected.join("; "));
        ExitCode::FAILURE
    }
}
