use std::path::Path;

use corner_core::algebra::{
    corner_subspace, is_two_sided_ideal, nilpotency_index, Quotient, ScAlgebra,
};
use corner_core::corner::{
    a_corner_structure, corner_iso_deformed, finite_corner_shapes, main_decompose, verify_converse,
    CornerDecomposition,
};
use corner_core::format::AlgebraFile;
use corner_core::generators::{
    block_pattern_span, m3, paper10, paper10_min_p, paper10_patterns, random_semisimple,
    random_triangular, remark, t2, GeneratedAlgebra, GENERATOR_NAMES,
};
use corner_core::ledger::Ledger;
use corner_core::linalg::{is_prime, Matrix, Subspace};
use corner_core::radical::{element_count, radical, radical_bruteforce, radical_of_corner};
use corner_core::rank::{
    left_rank, right_rank, right_rank_bruteforce, right_rank_with_witness, right_socle, RankValue,
};
use corner_core::regular::{inner_inverse, square_witnesses, unit_regular_factorization};
use corner_core::wedderburn::{wedderburn_structure, WedderburnStructure};
use corner_core::{suite, Ctx, Error};
use serde_json::{json, Map, Value};

use crate::report::sha256_hex;
use crate::Common;

/// Failures before any computation: unreadable files, unknown labels, bad
/// flags. These exit with status 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

/// What a command produced: a result payload, the recomputed checks and,
/// when a hypothesis failed, the error.
pub struct Outcome {
    pub result: Map<String, Value>,
    pub ledger: Ledger,
    pub error: Option<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            result: Map::new(),
            ledger: Ledger::new(),
            error: None,
        }
    }

    fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.result.insert(key.into(), v.into());
    }

    /// Records a failed computation; the command exits with status 1.
    fn fail(mut self, e: Error) -> Self {
        self.error = Some(e.to_string());
        self
    }
}

pub struct Loaded {
    pub gen: GeneratedAlgebra,
    pub alg: ScAlgebra,
    pub digest: String,
}

pub fn load(path: &Path, common: &Common) -> Result<Loaded, InputError> {
    let bytes = std::fs::read(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| InputError(format!("{}: not UTF-8 text", path.display())))?;
    let file =
        AlgebraFile::parse(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    if let Some(p) = common.p {
        if p != file.p {
            return Err(InputError(format!(
                "--p {p} does not match p={} in the file",
                file.p
            )));
        }
    }
    let name = path
        .file_stem()
        .map_or("algebra".into(), |s| s.to_string_lossy().into_owned());
    let gen = file
        .to_generated(name)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let alg = gen.to_sc();
    Ok(Loaded {
        gen,
        alg,
        digest: sha256_hex(&bytes),
    })
}

/// A named element, `unity`, or a matrix unit `Eij` (1-based, single
/// digits) or `E<i>_<j>`.
pub fn element(l: &Loaded, label: &str) -> Result<Vec<u32>, InputError> {
    if let Some(c) = l.gen.element_coords(label) {
        return Ok(c);
    }
    if label == "unity" || label == "1" {
        return l
            .alg
            .unity()
            .map(|u| u.coords().to_vec())
            .ok_or_else(|| InputError("the algebra has no unity".into()));
    }
    let n = l.gen.algebra.size();
    let unit = label.strip_prefix('E').and_then(|rest| {
        let (i, j) = match rest.split_once('_') {
            Some((i, j)) => (i.parse::<usize>().ok()?, j.parse::<usize>().ok()?),
            None if rest.len() == 2 => (rest[..1].parse().ok()?, rest[1..].parse().ok()?),
            None => return None,
        };
        (1..=n).contains(&i).then_some(())?;
        (1..=n).contains(&j).then_some((i - 1, j - 1))
    });
    let known: Vec<&str> = l.gen.elements.iter().map(|(k, _)| k.as_str()).collect();
    let Some((i, j)) = unit else {
        return Err(InputError(format!(
            "unknown element `{label}`; named elements: {}",
            if known.is_empty() {
                "none".into()
            } else {
                known.join(", ")
            }
        )));
    };
    l.gen
        .algebra
        .coords(&Matrix::unit(l.alg.field(), n, i, j))
        .ok_or_else(|| InputError(format!("{label} is not in the algebra")))
}

fn ctx(common: &Common) -> Ctx {
    Ctx::new(common.seed).with_brute_cap(common.brute_cap)
}

fn rank_json(r: RankValue) -> Value {
    match r {
        RankValue::Finite(n) => json!(n),
        RankValue::Infinite => json!("infinite"),
    }
}

fn matrices(l: &Loaded, s: &Subspace) -> Value {
    s.basis()
        .iter()
        .map(|v| json!(l.gen.algebra.matrix_of(v).data()))
        .collect()
}

fn blocks_json(s: &WedderburnStructure) -> Value {
    s.blocks
        .iter()
        .map(|b| {
            json!({
                "n": b.n,
                "degree": b.e,
                "q": b.q(s.p).map_or(json!(null), |q| json!(q.to_string())),
                "dim": b.dim(),
            })
        })
        .collect()
}

fn blocks_consistent(s: &WedderburnStructure) -> bool {
    s.blocks.iter().all(|b| b.dim() == b.n * b.n * b.e)
        && s.blocks.iter().map(|b| b.dim()).sum::<usize>() == s.algebra_dim
}

macro_rules! attempt {
    ($out:expr, $e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => return Ok($out.fail(err.into())),
        }
    };
}

pub fn info(l: &Loaded, common: &Common) -> Result<Outcome, InputError> {
    let mut out = Outcome::new();
    let alg = &l.alg;
    let mut c = ctx(common);
    out.set("p", alg.field().p());
    out.set("n", l.gen.algebra.size());
    out.set("dim", alg.dim());
    out.set("unital", alg.is_unital());
    out.set("commutative", alg.is_commutative());
    out.set(
        "elements",
        l.gen
            .elements
            .iter()
            .map(|(k, _)| json!(k))
            .collect::<Value>(),
    );
    out.ledger.record(
        "associative on basis triples",
        alg.check_associativity().is_ok(),
    );
    let j = attempt!(out, radical(alg, common.brute_cap));
    out.set("radical_dim", j.dim());
    let q = attempt!(out, Quotient::new(alg, &j));
    let s = attempt!(out, wedderburn_structure(&q.algebra, &ctx(common)));
    out.set("semisimple_quotient", blocks_json(&s));
    out.ledger
        .record("block dimensions add up to dim A/J", blocks_consistent(&s));
    if alg.is_unital() {
        let soc = attempt!(out, right_socle(alg, &mut c));
        out.set("right_socle_dim", soc.dim());
    }
    Ok(out)
}

pub fn radical_cmd(l: &Loaded, common: &Common) -> Result<Outcome, InputError> {
    let mut out = Outcome::new();
    let alg = &l.alg;
    let j = attempt!(out, radical(alg, common.brute_cap));
    out.set("radical_dim", j.dim());
    out.set("quotient_dim", alg.dim() - j.dim());
    let index = attempt!(out, nilpotency_index(alg, &j));
    out.set("nilpotency_index", index.map_or(json!(null), |k| json!(k)));
    out.ledger
        .record("J is a two-sided ideal", is_two_sided_ideal(alg, &j));
    out.ledger.record("J is nilpotent", index.is_some());
    let q = attempt!(out, Quotient::new(alg, &j));
    let jq = attempt!(out, radical(&q.algebra, common.brute_cap));
    out.ledger.record("J(A/J) = 0", jq.is_zero());
    if element_count(alg) <= common.brute_cap {
        let brute = attempt!(out, radical_bruteforce(alg, common.brute_cap));
        out.ledger
            .record("J equals the enumerated radical", brute == j);
    }
    if common.full {
        out.set("basis", matrices(l, &j));
    }
    Ok(out)
}

pub fn structure(l: &Loaded, common: &Common) -> Result<Outcome, InputError> {
    let mut out = Outcome::new();
    let alg = &l.alg;
    let j = attempt!(out, radical(alg, common.brute_cap));
    out.set("radical_dim", j.dim());
    let q = attempt!(out, Quotient::new(alg, &j));
    let s = attempt!(out, wedderburn_structure(&q.algebra, &ctx(common)));
    out.set("blocks", blocks_json(&s));
    out.set("semisimple", j.is_zero());
    out.ledger.record(
        "dim block = n^2 e and blocks fill A/J",
        blocks_consistent(&s),
    );
    Ok(out)
}

pub fn rank(l: &Loaded, label: &str, common: &Common) -> Result<Outcome, InputError> {
    let a = element(l, label)?;
    let mut out = Outcome::new();
    let alg = &l.alg;
    let mut c = ctx(common);
    out.set("element", label);
    let r = attempt!(out, right_rank_with_witness(alg, &a, &mut c));
    let left = attempt!(out, left_rank(alg, &a, &mut c)).value;
    out.set("right_rank", rank_json(r.value));
    out.set("left_rank", rank_json(left));
    if let Some(w) = &r.witness {
        let total = w
            .components
            .iter()
            .fold(vec![0; alg.dim()], |acc, x| alg.add(&acc, x));
        out.ledger
            .record("minimal decomposition sums to the element", total == a);
        let mut ones = true;
        for x in &w.components {
            ones &= attempt!(out, right_rank(alg, x, &mut c)).value == RankValue::Finite(1);
        }
        out.ledger.record("every summand has rank 1", ones);
        if common.full {
            out.set(
                "minimal_decomposition",
                w.components
                    .iter()
                    .map(|x| json!(l.gen.algebra.matrix_of(x).data()))
                    .collect::<Value>(),
            );
        }
    }
    if r.value.is_finite() && left.is_finite() && inner_inverse(alg, &a).is_ok() {
        out.ledger.record(
            "regular of finite rank: left rank = right rank",
            r.value == left,
        );
    }
    if element_count(alg) <= common.brute_cap {
        let brute = attempt!(out, right_rank_bruteforce(alg, &a, common.brute_cap));
        out.ledger
            .record("right rank equals the enumerated rank", brute == r.value);
    }
    Ok(out)
}

pub fn regular(l: &Loaded, label: &str, common: &Common) -> Result<Outcome, InputError> {
    let a = element(l, label)?;
    let mut out = Outcome::new();
    let alg = &l.alg;
    let mut c = ctx(common);
    out.set("element", label);
    let cert = match inner_inverse(alg, &a) {
        Ok(cert) => cert,
        Err(Error::NotRegular(_)) => {
            out.set("regular", false);
            return Ok(out.fail(Error::NotRegular(label.into())));
        }
        Err(e) => return Ok(out.fail(e)),
    };
    out.set("regular", true);
    out.ledger
        .record("a b a = a, e = ab and g = ba idempotent", cert.verify(alg));
    let ur = attempt!(out, unit_regular_factorization(alg, &a, &mut c));
    out.ledger
        .record("a = e u with e idempotent, u invertible", ur.verify(alg));
    let e_rank = attempt!(out, right_rank(alg, &cert.e, &mut c)).value;
    out.set("rank_of_ab", rank_json(e_rank));
    match square_witnesses(alg, &a) {
        Ok((b, cw)) => {
            let a2 = alg.mul_raw(&a, &a);
            out.set("square_witnesses", true);
            out.ledger.record(
                "a = a^2 b = c a^2",
                alg.mul_raw(&a2, &b) == a && alg.mul_raw(&cw, &a2) == a,
            );
        }
        Err(_) => out.set("square_witnesses", false),
    }
    if common.full {
        let m = |x: &[u32]| json!(l.gen.algebra.matrix_of(x).data());
        out.set("b", m(&cert.b));
        out.set("e", m(&ur.e));
        out.set("u", m(&ur.u));
    }
    Ok(out)
}

pub fn corner(l: &Loaded, label: &str, common: &Common) -> Result<Outcome, InputError> {
    let a = element(l, label)?;
    let mut out = Outcome::new();
    let alg = &l.alg;
    let mut c = ctx(common);
    out.set("element", label);
    let span = attempt!(out, corner_subspace(alg, &a));
    out.set("corner_dim", span.dim());
    let (k, incl) = attempt!(out, alg.subalgebra(&span));
    let jk = attempt!(out, radical(&k, common.brute_cap)).image(incl.matrix());
    out.set("corner_radical_dim", jk.dim());
    out.set("corner_is_radical", jk == span);
    if let Ok(cert) = inner_inverse(alg, &a) {
        let formula = attempt!(out, radical_of_corner(alg, &a, &cert.b, common.brute_cap));
        out.ledger
            .record("J(aAa) = {x in aAa : axa in J(A)}", formula == jk);
        let (pres, to_def, from_def) = attempt!(out, corner_iso_deformed(alg, &cert));
        out.ledger.record(
            "aAa -> (eAe)_{eae}, x -> xb is an isomorphism",
            to_def.is_isomorphism(&pres.corner, &pres.deformed),
        );
        out.ledger.record(
            "(eAe)_{eae} -> aAa, x -> xa is its inverse",
            from_def
                .compose(&to_def)
                .is_ok_and(|m| *m.matrix() == Matrix::identity(alg.field(), pres.corner.dim()))
                && from_def.is_isomorphism(&pres.deformed, &pres.corner),
        );
        let j = attempt!(out, radical(alg, common.brute_cap));
        let rank_a = attempt!(out, right_rank(alg, &a, &mut c)).value;
        if j.is_zero() && rank_a.is_finite() {
            let st = attempt!(out, a_corner_structure(alg, &a, &mut c));
            out.set("quotient_blocks", blocks_json(&st.quotient_structure));
            out.set("rank_a2", st.rank_a2);
            out.ledger.record(
                "sum of n_i in aAa/J(aAa) = rank a^2",
                st.quotient_structure.total_n() == st.rank_a2,
            );
        }
    } else {
        out.set("regular", false);
    }
    if common.full {
        out.set("basis", matrices(l, &span));
    }
    Ok(out)
}

fn decomposition_json(l: &Loaded, d: &CornerDecomposition, full: bool) -> Value {
    let ideals: Vec<Value> = d
        .ideals
        .iter()
        .map(|c| {
            let mut m = json!({
                "dim": c.ideal.dim(),
                "radical_dim": c.radical.dim(),
                "n": c.n,
                "degree": c.q_degree,
            });
            if full {
                m["basis"] = matrices(l, &c.ideal);
                m["radical_basis"] = matrices(l, &c.radical);
            }
            m
        })
        .collect();
    let mut v = json!({
        "k": d.k(),
        "corner_dim": d.corner_span.dim(),
        "i0_dim": d.i0.dim(),
        "ideals": ideals,
        "rank_a2": rank_json(d.rank_a2),
    });
    if full {
        v["i0_basis"] = matrices(l, &d.i0);
    }
    v
}

/// The 10x10 block example, if `l` is it: the displayed subspaces span the
/// corner while the displayed I_1 and I_2 meet.
fn displayed_patterns(l: &Loaded, a: &[u32], out: &mut Outcome) {
    let n = l.gen.algebra.size();
    let p = l.alg.field().p();
    if n == 0 || !n.is_multiple_of(10) || (p as usize) <= paper10_min_p(n / 10) {
        return;
    }
    let d = n / 10;
    let Ok(reference) = paper10(p, d) else { return };
    if reference.algebra.span() != l.gen.algebra.span()
        || reference.element("a") != Some(&l.gen.algebra.matrix_of(a))
    {
        return;
    }
    let f = l.alg.field();
    let pat = |b: Vec<(usize, usize)>| block_pattern_span(f, d, &b);
    let (i0, i1, i2) = (
        pat(paper10_patterns::i0()),
        pat(paper10_patterns::i1()),
        pat(paper10_patterns::i2()),
    );
    let Ok(corner) = corner_subspace(&l.alg, a) else {
        return;
    };
    let corner_flat = Subspace::from_vectors(
        f,
        n * n,
        corner
            .basis()
            .iter()
            .map(|v| l.gen.algebra.matrix_of(v).data().to_vec()),
    );
    let meet = i1.intersect(&i2).map(|s| s.dim()).unwrap_or(0);
    let spans = i0
        .sum(&i1)
        .and_then(|s| s.sum(&i2))
        .is_ok_and(|s| s == corner_flat);
    out.set(
        "displayed_patterns",
        json!({ "i0_dim": i0.dim(), "i1_dim": i1.dim(), "i2_dim": i2.dim(), "i1_meet_i2_dim": meet }),
    );
    out.ledger.record("displayed I_0 + I_1 + I_2 = aAa", spans);
    out.ledger.record_detail(
        "displayed I_1 and I_2 intersect, so their sum is not direct",
        meet == 9 * d * d,
        format!("dim {meet}"),
    );
}

pub fn decompose(l: &Loaded, label: &str, common: &Common) -> Result<Outcome, InputError> {
    let a = element(l, label)?;
    let mut out = Outcome::new();
    let alg = &l.alg;
    let mut c = ctx(common);
    out.set("element", label);
    displayed_patterns(l, &a, &mut out);
    let d = match main_decompose(alg, &a, &mut c) {
        Ok(d) => d,
        Err(e) => {
            if matches!(e, Error::InfiniteSquareRank) {
                out.set("rank_a2", "infinite");
            }
            return Ok(out.fail(e));
        }
    };
    out.set("decomposition", decomposition_json(l, &d, common.full));
    out.ledger.extend(d.ledger.clone());
    let mut other = Ctx::new(common.seed.wrapping_add(1)).with_brute_cap(common.brute_cap);
    let d2 = attempt!(out, main_decompose(alg, &a, &mut other));
    let same = d.ideals.len() == d2.ideals.len()
        && d.ideals
            .iter()
            .all(|x| d2.ideals.iter().any(|y| y.ideal == x.ideal))
        && d.i0.dim() == d2.i0.dim();
    out.ledger
        .record("another seed gives the same I_1, ..., I_k", same);
    if attempt!(out, radical(alg, common.brute_cap)).is_zero() {
        let conv = attempt!(out, verify_converse(alg, &a, &(&d).into(), &mut c));
        out.ledger.record_detail(
            "converse: rank a^2 = sum of n_j",
            RankValue::Finite(conv.rank_a2) == d.rank_a2,
            format!("{}", conv.rank_a2),
        );
        out.ledger.extend(conv.ledger);
    }
    Ok(out)
}

pub fn shapes(l: &Loaded, label: &str, common: &Common) -> Result<Outcome, InputError> {
    let a = element(l, label)?;
    let mut out = Outcome::new();
    let alg = &l.alg;
    let mut c = ctx(common);
    out.set("element", label);
    let d = attempt!(out, main_decompose(alg, &a, &mut c));
    out.ledger
        .record("decomposition certified", d.is_certified());
    let s = attempt!(out, finite_corner_shapes(alg, &a, &d, &mut c));
    out.set("rank_a", s.rank_a);
    out.set(
        "live_blocks",
        s.live
            .iter()
            .map(|b| json!({"m": b.m, "n": b.n, "degree": b.q_degree}))
            .collect::<Value>(),
    );
    out.set(
        "other_blocks",
        s.dead
            .iter()
            .map(|b| json!({"m": b.m, "degree": b.q_degree}))
            .collect::<Value>(),
    );
    out.ledger
        .record("sum of m_j + sum of n_j = rank a", s.identity_holds);
    out.ledger
        .record("n_j agree with the decomposition", s.matches_decomposition);
    Ok(out)
}

/// Checks on the built-in named examples, run by `verify --suite all`.
fn generated_checks(out: &mut Outcome, common: &Common) -> Result<(), Error> {
    let mut c = ctx(common);
    let g = m3(101)?;
    let alg = g.to_sc();
    let a = g.element_coords("a").expect("m3 has a");
    let d = main_decompose(&alg, &a, &mut c)?;
    out.ledger.record(
        "m3: decomposition certified with k = 1, n_1 = 1",
        d.is_certified() && d.shape() == vec![(1, 1)],
    );
    let conv = verify_converse(&alg, &a, &(&d).into(), &mut c)?;
    out.ledger
        .record("m3: converse gives rank a^2 = 1", conv.rank_a2 == 1);
    let s = finite_corner_shapes(&alg, &a, &d, &mut c)?;
    out.ledger
        .record("m3: m + n = rank a = 2", s.identity_holds && s.rank_a == 2);

    let t = t2(101)?;
    let ta = t.to_sc();
    let e11 = t.element_coords("E11").expect("t2 has E11");
    out.ledger.record(
        "t2: rank E11 is infinite",
        right_rank(&ta, &e11, &mut c)?.value == RankValue::Infinite,
    );

    let r = remark(101)?;
    let ra = r.to_sc();
    let ranks = (
        right_rank(&ra, &r.element_coords("a").expect("a"), &mut c)?.value,
        right_rank(&ra, &r.element_coords("b").expect("b"), &mut c)?.value,
    );
    out.ledger.record(
        "remark: ranks 1 and 2 with equal corners",
        ranks == (RankValue::Finite(1), RankValue::Finite(2)),
    );
    Ok(())
}

pub fn verify(which: &str, cases: usize, common: &Common) -> Result<Outcome, InputError> {
    let mut out = Outcome::new();
    let report = suite::run(which, common.seed, cases)?;
    let mut summary = Map::new();
    for t in &report.theorems {
        summary.insert(
            t.name.into(),
            json!({
                "statement": t.statement,
                "cases": t.cases,
                "passed": t.passed,
                "vacuous": t.vacuous,
                "failed": t.failed,
            }),
        );
        let detail = if t.failures.is_empty() {
            format!("{} passed, {} vacuous", t.passed, t.vacuous)
        } else {
            t.failures.join("; ")
        };
        out.ledger.record_detail(t.name, t.ok(), detail);
    }
    out.set("theorems", Value::Object(summary));
    if which == "all" {
        if let Err(e) = generated_checks(&mut out, common) {
            return Ok(out.fail(e));
        }
    }
    Ok(out)
}

pub fn gen(name: &str, d: usize, common: &Common) -> Result<GeneratedAlgebra, InputError> {
    let p = common.p.unwrap_or(101);
    if p == 2 || !is_prime(p) {
        return Err(InputError(format!("--p must be an odd prime, got {p}")));
    }
    let mut c = ctx(common);
    let g = match name {
        "paper10" => paper10(p, d)?,
        "t2" => t2(p)?,
        "m3" => m3(p)?,
        "remark" => remark(p)?,
        "random" if common.seed.is_multiple_of(2) => random_semisimple(p, 20, &mut c)?,
        "random" => random_triangular(p, 20, &mut c)?,
        _ => {
            return Err(InputError(format!(
                "unknown generator `{name}`; available: {}",
                GENERATOR_NAMES.join(", ")
            )))
        }
    };
    Ok(g)
}
