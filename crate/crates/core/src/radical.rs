//! Jacobson radicals.
//!
//! The main algorithm is the trace-form criterion: for a faithful
//! representation of size `m < p`,
//! `J(A) = {x : tr(x y) = 0 for all y in A}`. Power sums of the eigenvalues of
//! `x y` determine them when `p > m`, so the kernel is exactly the set of `x`
//! with `xA` nil; for a non-unital `A` this still forces `x` into `J(A)`
//! because `A / J(A)` is unital.

use crate::algebra::{is_two_sided_ideal, nilpotency_index, two_sided_ideal, Quotient, ScAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

/// Default bound on `p^d` for exhaustive enumeration.
pub const DEFAULT_BRUTE_CAP: u128 = 1 << 20;

/// Size of the faithful representation the trace criterion will use, and
/// the traces of its basis images.
fn trace_data(alg: &ScAlgebra) -> (usize, Vec<u32>) {
    let p = alg.field().p() as usize;
    if let Some(rep) = alg.representation() {
        if p > rep.size {
            return (rep.size, rep.images.iter().map(Matrix::trace).collect());
        }
    }
    let d = alg.dim();
    let size = if alg.is_unital() { d } else { d + 1 };
    // tr(L_{b_k}) = sum_j c[k][j][j]; the adjoined unit adds nothing.
    let f = alg.field();
    let traces = (0..d)
        .map(|k| (0..d).fold(0, |acc, j| f.add(acc, alg.basis_product(k, j)[j])))
        .collect();
    (size, traces)
}

/// Gram matrix `G[i][j] = tr(b_i b_j)`.
fn trace_form(alg: &ScAlgebra, traces: &[u32]) -> Matrix {
    let d = alg.dim();
    let f = alg.field();
    let p = f.p() as u64;
    let mut g = Matrix::zeros(f, d, d);
    for i in 0..d {
        for j in 0..d {
            let s = alg
                .basis_product(i, j)
                .iter()
                .zip(traces)
                .fold(0u64, |acc, (&c, &t)| acc + c as u64 * t as u64);
            g.set(i, j, (s % p) as u32);
        }
    }
    g
}

fn trace_radical_unchecked(alg: &ScAlgebra) -> Result<Subspace> {
    let (size, traces) = trace_data(alg);
    let p = alg.field().p();
    if p as usize <= size {
        let needed = alg.representation().map_or(size, |r| r.size.min(size));
        return Err(Error::CharacteristicTooSmall { p, needed });
    }
    // G is symmetric, so its null space is the left radical of the form.
    Ok(trace_form(alg, &traces).kernel())
}

/// The Jacobson radical by the trace-form criterion, post-verified to be a
/// nilpotent ideal with semiprimitive quotient.
pub fn jacobson_radical(alg: &ScAlgebra) -> Result<Subspace> {
    let j = trace_radical_unchecked(alg)?;
    verify_radical(alg, &j)?;
    Ok(j)
}

fn verify_radical(alg: &ScAlgebra, j: &Subspace) -> Result<()> {
    if !is_two_sided_ideal(alg, j) {
        return Err(Error::InternalInconsistency(
            "trace-form radical is not an ideal".into(),
        ));
    }
    if nilpotency_index(alg, j)?.is_none() {
        return Err(Error::InternalInconsistency(
            "trace-form radical is not nilpotent".into(),
        ));
    }
    let q = Quotient::new(alg, j)?;
    if let Ok(jq) = trace_radical_unchecked(&q.algebra) {
        if !jq.is_zero() {
            return Err(Error::InternalInconsistency(
                "quotient by the trace-form radical is not semiprimitive".into(),
            ));
        }
    }
    Ok(())
}

/// Number of elements, `p^d`, saturating.
pub fn element_count(alg: &ScAlgebra) -> u128 {
    (alg.field().p() as u128)
        .checked_pow(alg.dim() as u32)
        .unwrap_or(u128::MAX)
}

/// Visits every coordinate vector of `GF(p)^d` in lexicographic order.
pub(crate) fn for_each_vector(p: u32, d: usize, mut visit: impl FnMut(&[u32]) -> bool) {
    let mut v = vec![0u32; d];
    loop {
        if !visit(&v) {
            return;
        }
        let mut i = 0;
        loop {
            if i == d {
                return;
            }
            v[i] += 1;
            if v[i] < p {
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}

fn generates_nilpotent_ideal(alg: &ScAlgebra, x: &[u32]) -> Result<bool> {
    let gen = Subspace::from_vectors(alg.field(), alg.dim(), [x]);
    let ideal = two_sided_ideal(alg, &gen)?;
    Ok(nilpotency_index(alg, &ideal)?.is_some())
}

/// Radical by definition: the span of all elements whose two-sided ideal is
/// nilpotent. Exhaustive over `p^d` elements.
pub fn radical_bruteforce(alg: &ScAlgebra, cap: u128) -> Result<Subspace> {
    let size = element_count(alg);
    if size > cap {
        return Err(Error::SearchSpaceTooLarge { size, cap });
    }
    let f = alg.field();
    let mut found = crate::linalg::SpanBuilder::new(f, alg.dim());
    let mut err = None;
    for_each_vector(f.p(), alg.dim(), |x| {
        if found.contains(x) {
            return true;
        }
        match generates_nilpotent_ideal(alg, x) {
            Ok(true) => {
                found.insert(x);
            }
            Ok(false) => {}
            Err(e) => {
                err = Some(e);
                return false;
            }
        }
        true
    });
    if let Some(e) = err {
        return Err(e);
    }
    let j = found.into_subspace();
    if !is_two_sided_ideal(alg, &j) || nilpotency_index(alg, &j)?.is_none() {
        return Err(Error::InternalInconsistency(
            "span of nilpotent-ideal generators is not a nilpotent ideal".into(),
        ));
    }
    let q = Quotient::new(alg, &j)?;
    let mut clean = true;
    for_each_vector(f.p(), q.algebra.dim(), |y| {
        if y.iter().all(|&c| c == 0) {
            return true;
        }
        clean = !generates_nilpotent_ideal(&q.algebra, y).unwrap_or(true);
        clean
    });
    if !clean {
        return Err(Error::InternalInconsistency(
            "quotient by the enumerated radical has a nilpotent ideal".into(),
        ));
    }
    Ok(j)
}

/// Trace-form radical, falling back to enumeration when the characteristic
/// is too small and `p^d <= cap`.
pub fn radical(alg: &ScAlgebra, cap: u128) -> Result<Subspace> {
    match jacobson_radical(alg) {
        Err(Error::CharacteristicTooSmall { .. }) if element_count(alg) <= cap => {
            radical_bruteforce(alg, cap)
        }
        other => other,
    }
}

/// `x` is right quasi-regular iff `y - x y = -x` has a solution.
pub fn is_right_quasi_regular(alg: &ScAlgebra, x: &[u32]) -> bool {
    let d = alg.dim();
    let f = alg.field();
    let lx = alg.left_mult_matrix(x);
    let m = Matrix::identity(f, d).sub(&lx).expect("square");
    let rhs: Vec<u32> = x.iter().map(|&c| f.neg(c)).collect();
    m.solve(&rhs).is_some()
}

/// Kernel of `x -> (u x w mod J)` restricted to `domain`, in ambient coordinates.
fn preimage_mod(
    alg: &ScAlgebra,
    j: &Subspace,
    domain: &Subspace,
    u: &[u32],
    w: &[u32],
) -> Subspace {
    let f = alg.field();
    let cols: Vec<Vec<u32>> = domain
        .basis()
        .iter()
        .map(|x| j.reduce(&alg.mul3(u, x, w)))
        .collect();
    let m = Matrix::from_column_vectors(f, alg.dim(), &cols);
    let kernel = m.kernel();
    Subspace::from_vectors(
        f,
        alg.dim(),
        kernel.basis().iter().map(|c| domain.combine(c)),
    )
}

/// `J(A_s) = {x : s x s in J(A)}`.
pub fn radical_of_deformed(alg: &ScAlgebra, s: &[u32], cap: u128) -> Result<Subspace> {
    alg.unity_or_err()?;
    let j = radical(alg, cap)?;
    let full = Subspace::full(alg.field(), alg.dim());
    Ok(preimage_mod(alg, &j, &full, s, s))
}

/// `J(aAa) = {x in aAa : a x a in J(A)}` for regular `a` with `a b a = a`,
/// in the coordinates of `A`.
pub fn radical_of_corner(alg: &ScAlgebra, a: &[u32], b: &[u32], cap: u128) -> Result<Subspace> {
    alg.unity_or_err()?;
    if alg.mul3(a, b, a) != a {
        return Err(Error::NotRegularWitness);
    }
    let j = radical(alg, cap)?;
    let corner = crate::algebra::corner_subspace(alg, a)?;
    Ok(preimage_mod(alg, &j, &corner, a, a))
}

/// For finite-dimensional algebras, semiprime iff `J(A) = 0`.
pub fn is_semiprime(alg: &ScAlgebra, cap: u128) -> Result<bool> {
    Ok(radical(alg, cap)?.is_zero())
}

/// Every two-sided ideal of `alg` contained in `within`, by closing the
/// principal ideals of the elements of `within` under sums. The ideal list
/// is capped at `cap` entries as well as the element count.
pub fn ideals_bruteforce(alg: &ScAlgebra, within: &Subspace, cap: u128) -> Result<Vec<Subspace>> {
    let size = (alg.field().p() as u128)
        .checked_pow(within.dim() as u32)
        .unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::SearchSpaceTooLarge { size, cap });
    }
    let f = alg.field();
    let mut principal: Vec<Subspace> = Vec::new();
    let mut err = None;
    for_each_vector(f.p(), within.dim(), |c| {
        let x = within.combine(c);
        match two_sided_ideal(alg, &Subspace::from_vectors(f, alg.dim(), [x])) {
            Ok(i) if !principal.contains(&i) => principal.push(i),
            Ok(_) => {}
            Err(e) => {
                err = Some(Error::from(e));
                return false;
            }
        }
        true
    });
    if let Some(e) = err {
        return Err(e);
    }
    let mut lattice: Vec<Subspace> = principal.clone();
    let mut frontier = lattice.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for i in &frontier {
            for p in &principal {
                let s = i.sum(p)?;
                if !lattice.contains(&s) {
                    if lattice.len() as u128 >= cap {
                        return Err(Error::SearchSpaceTooLarge { size: cap + 1, cap });
                    }
                    lattice.push(s.clone());
                    next.push(s);
                }
            }
        }
        frontier = next;
    }
    if lattice
        .iter()
        .any(|i| !i.is_subspace_of(within) || !is_two_sided_ideal(alg, i))
    {
        return Err(Error::InternalInconsistency(
            "enumerated ideal escapes its bound".into(),
        ));
    }
    Ok(lattice)
}

/// Whether the nonzero ideal `ideal` splits as `K + L` with `K`, `L` nonzero
/// ideals of `alg`, `K ∩ L = 0`; decided over the full enumerated lattice.
pub fn splits_as_direct_sum_bruteforce(
    alg: &ScAlgebra,
    ideal: &Subspace,
    cap: u128,
) -> Result<bool> {
    let lattice = ideals_bruteforce(alg, ideal, cap)?;
    for k in &lattice {
        if k.is_zero() || k == ideal {
            continue;
        }
        for l in &lattice {
            if l.is_zero() || l == ideal || l.dim() + k.dim() != ideal.dim() {
                continue;
            }
            if k.intersect(l)?.is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
