//! Built-in algebras: the 10x10 block example, small named examples, seeded
//! random families for property suites, and a tiny corpus for brute-force
//! oracles in characteristic 2 and 3.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{MatrixAlgebra, ScAlgebra};
use crate::context::Ctx;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, PrimeField};

/// A matrix algebra with named elements.
#[derive(Clone, Debug)]
pub struct GeneratedAlgebra {
    pub name: String,
    pub algebra: MatrixAlgebra,
    pub elements: Vec<(String, Matrix)>,
}

impl GeneratedAlgebra {
    pub fn element(&self, label: &str) -> Option<&Matrix> {
        self.elements
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, m)| m)
    }

    /// Coordinates of a named element in the canonical basis.
    pub fn element_coords(&self, label: &str) -> Option<Vec<u32>> {
        self.algebra.coords(self.element(label)?)
    }

    pub fn to_sc(&self) -> ScAlgebra {
        self.algebra.to_sc(Some(self.name.clone()))
    }
}

pub const GENERATOR_NAMES: &[&str] = &["paper10", "t2", "m3", "remark", "random"];

fn field(p: u32) -> Result<PrimeField> {
    Ok(PrimeField::new(p)?)
}

fn units(f: PrimeField, n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Vec<Matrix> {
    pairs
        .into_iter()
        .map(|(i, j)| Matrix::unit(f, n, i, j))
        .collect()
}

fn sum(ms: &[Matrix]) -> Matrix {
    let first = ms[0].clone();
    ms[1..]
        .iter()
        .fold(first, |acc, m| acc.add(m).expect("same shape"))
}

/// Places `block` at block position `(bi, bj)` of an `n x n` matrix with
/// blocks of size `block.rows()`.
fn place(n: usize, bi: usize, bj: usize, block: &Matrix) -> Matrix {
    let k = block.rows();
    let mut m = Matrix::zeros(block.field(), n, n);
    for r in 0..k {
        for c in 0..k {
            m.set(bi * k + r, bj * k + c, block.get(r, c));
        }
    }
    m
}

pub fn full_matrix_algebra(p: u32, n: usize) -> Result<GeneratedAlgebra> {
    let f = field(p)?;
    let gens = units(f, n, (0..n).flat_map(|i| (0..n).map(move |j| (i, j))));
    Ok(GeneratedAlgebra {
        name: format!("M_{n}(GF({p}))"),
        algebra: MatrixAlgebra::new(f, n, &gens)?,
        elements: Vec::new(),
    })
}

/// Upper triangular 2x2 matrices, with the matrix units as elements.
pub fn t2(p: u32) -> Result<GeneratedAlgebra> {
    let f = field(p)?;
    let gens = units(f, 2, [(0, 0), (0, 1), (1, 1)]);
    Ok(GeneratedAlgebra {
        name: format!("T_2(GF({p}))"),
        algebra: MatrixAlgebra::new(f, 2, &gens)?,
        elements: vec![
            ("E11".into(), gens[0].clone()),
            ("E12".into(), gens[1].clone()),
            ("E22".into(), gens[2].clone()),
        ],
    })
}

/// `M_3` with `a = E11 + E23` and the inner inverse `E11 + E32`.
pub fn m3(p: u32) -> Result<GeneratedAlgebra> {
    let mut g = full_matrix_algebra(p, 3)?;
    let f = g.algebra.field();
    let a = sum(&units(f, 3, [(0, 0), (1, 2)]));
    let b = sum(&units(f, 3, [(0, 0), (2, 1)]));
    g.elements = vec![("a".into(), a), ("b".into(), b)];
    Ok(g)
}

/// Block groups of the 10x10 example (0-based block indices).
pub const PAPER10_GROUPS: [&[usize]; 4] = [&[0, 1], &[2, 3, 4], &[5, 6, 7], &[8, 9]];

/// Block positions (1-based) of the identity blocks of `a`.
pub const PAPER10_A: [(usize, usize); 6] = [(1, 2), (3, 4), (4, 5), (6, 7), (7, 8), (9, 10)];

fn paper10_group(i: usize) -> usize {
    PAPER10_GROUPS
        .iter()
        .position(|g| g.contains(&i))
        .expect("block index below 10")
}

/// Smallest characteristic for which the radical of the example at block
/// size `d` is computable by the trace form on its regular representation.
pub fn paper10_min_p(d: usize) -> usize {
    63 * d * d + 1
}

/// The 10x10 block example with every block `E = M_d(GF(p))`. Elements: `a`,
/// its transpose `aT`, `a2 = a^2` and `a2T`.
pub fn paper10(p: u32, d: usize) -> Result<GeneratedAlgebra> {
    let needed = paper10_min_p(d);
    if (p as usize) <= needed {
        return Err(Error::CharacteristicTooSmall { p, needed });
    }
    let f = field(p)?;
    let n = 10 * d;
    let mut gens = Vec::new();
    for bi in 0..10 {
        for bj in 0..10 {
            if paper10_group(bi) <= paper10_group(bj) {
                for r in 0..d {
                    for c in 0..d {
                        gens.push(Matrix::unit(f, n, bi * d + r, bj * d + c));
                    }
                }
            }
        }
    }
    let algebra = MatrixAlgebra::new(f, n, &gens)?;
    let id = Matrix::identity(f, d);
    let a = sum(&PAPER10_A
        .iter()
        .map(|&(i, j)| place(n, i - 1, j - 1, &id))
        .collect::<Vec<_>>());
    let a_t = a.transpose();
    let a2 = a.mul(&a)?;
    let a2_t = a2.transpose();
    Ok(GeneratedAlgebra {
        name: format!("paper10(d={d}) over GF({p})"),
        algebra,
        elements: vec![
            ("a".into(), a),
            ("aT".into(), a_t),
            ("a2".into(), a2),
            ("a2T".into(), a2_t),
        ],
    })
}

/// Block positions (1-based) of the displayed patterns in the example.
pub mod paper10_patterns {
    fn product(rows: &[usize], cols: &[usize]) -> Vec<(usize, usize)> {
        rows.iter()
            .flat_map(|&r| cols.iter().map(move |&c| (r, c)))
            .collect()
    }

    pub fn corner() -> Vec<(usize, usize)> {
        let mut v = vec![(1, 2)];
        v.extend(product(&[1, 3, 4], &[4, 5, 7, 8, 10]));
        v.extend(product(&[6, 7], &[7, 8, 10]));
        v.push((9, 10));
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn i0() -> Vec<(usize, usize)> {
        vec![(1, 2), (9, 10)]
    }

    pub fn i1() -> Vec<(usize, usize)> {
        product(&[1, 3, 4], &[4, 5, 7, 8, 10])
    }

    pub fn i2() -> Vec<(usize, usize)> {
        product(&[1, 3, 4, 6, 7], &[7, 8, 10])
    }
}

/// Span of all matrix units inside the given blocks, in flattened
/// coordinates of `M_{10d}`.
pub fn block_pattern_span(
    f: PrimeField,
    d: usize,
    blocks: &[(usize, usize)],
) -> crate::linalg::Subspace {
    let n = 10 * d;
    let vecs = blocks.iter().flat_map(|&(bi, bj)| {
        (0..d).flat_map(move |r| {
            (0..d).map(move |c| {
                let mut v = vec![0u32; n * n];
                v[((bi - 1) * d + r) * n + (bj - 1) * d + c] = 1;
                v
            })
        })
    });
    crate::linalg::Subspace::from_vectors(f, n * n, vecs)
}

/// Monic polynomials are coefficient vectors, lowest degree first.
fn poly_rem(f: PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = f.inv(b[db]).expect("nonzero leading coefficient");
    while r.len() > db {
        let top = *r.last().expect("nonempty");
        if top != 0 {
            let c = f.mul(top, lead_inv);
            let shift = r.len() - 1 - db;
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(c, bi));
            }
        }
        r.pop();
    }
    r
}

fn monic_polys(p: u32, deg: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(deg as u32);
    (0..count).map(move |mut k| {
        let mut v = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            v.push((k % p as u64) as u32);
            k /= p as u64;
        }
        v.push(1);
        v
    })
}

/// First monic irreducible polynomial of degree `deg` in lexicographic
/// order of coefficients, by trial division.
pub fn irreducible_poly(p: u32, deg: usize) -> Result<Vec<u32>> {
    let f = field(p)?;
    monic_polys(p, deg)
        .find(|g| {
            (1..=deg / 2)
                .all(|k| monic_polys(p, k).all(|h| poly_rem(f, g, &h).iter().any(|&c| c != 0)))
        })
        .ok_or_else(|| Error::InternalInconsistency("no irreducible polynomial".into()))
}

/// Companion matrix of a monic polynomial.
pub fn companion(f: PrimeField, poly: &[u32]) -> Matrix {
    let k = poly.len() - 1;
    let mut m = Matrix::zeros(f, k, k);
    for i in 1..k {
        m.set(i, i - 1, 1);
    }
    for (i, &c) in poly[..k].iter().enumerate() {
        m.set(i, k - 1, f.neg(c));
    }
    m
}

/// Basis `1, C, ..., C^{k-1}` of the field `GF(p)[C]` for an irreducible `C`.
fn field_basis(c: &Matrix) -> Vec<Matrix> {
    let k = c.rows();
    let mut out = vec![Matrix::identity(c.field(), k)];
    for _ in 1..k {
        let next = out.last().expect("nonempty").mul(c).expect("square");
        out.push(next);
    }
    out
}

/// `M_m(GF(p^k))` realized inside `M_{mk}(GF(p))`.
fn matrix_over_extension(f: PrimeField, m: usize, k: usize) -> Result<Vec<Matrix>> {
    let c = companion(f, &irreducible_poly(f.p(), k)?);
    let basis = field_basis(&c);
    let mut out = Vec::with_capacity(m * m * k);
    for i in 0..m {
        for j in 0..m {
            for b in &basis {
                out.push(place(m * k, i, j, b));
            }
        }
    }
    Ok(out)
}

/// Embeds `x` in the diagonal block starting at `offset` of an `n x n` matrix.
fn embed(n: usize, offset: usize, x: &Matrix) -> Matrix {
    let mut m = Matrix::zeros(x.field(), n, n);
    for r in 0..x.rows() {
        for c in 0..x.cols() {
            m.set(offset + r, offset + c, x.get(r, c));
        }
    }
    m
}

/// The finite-field analog of the pair `E12` in `M_2(H)` and `E13 + E24` in
/// `M_4(R)`: the product `M_2(GF(p^4)) x M_4(GF(p))` inside `M_12`, with `a`
/// the matrix unit `E12` of the first factor and `b = E13 + E24` in the
/// second. Both corners are 4-dimensional with zero multiplication, while
/// `a` has rank 1 and `b` rank 2.
pub fn remark(p: u32) -> Result<GeneratedAlgebra> {
    let f = field(p)?;
    let first = matrix_over_extension(f, 2, 4)?;
    let mut gens: Vec<Matrix> = first.iter().map(|x| embed(12, 0, x)).collect();
    gens.extend(
        units(f, 4, (0..4).flat_map(|i| (0..4).map(move |j| (i, j))))
            .iter()
            .map(|x| embed(12, 8, x)),
    );
    let algebra = MatrixAlgebra::new(f, 12, &gens)?;
    let a = embed(12, 0, &place(8, 0, 1, &Matrix::identity(f, 4)));
    let b = embed(12, 8, &sum(&units(f, 4, [(0, 2), (1, 3)])));
    Ok(GeneratedAlgebra {
        name: format!("M_2(GF({p}^4)) x M_4(GF({p}))"),
        algebra,
        elements: vec![("a".into(), a), ("b".into(), b)],
    })
}

fn random_invertible(f: PrimeField, n: usize, ctx: &mut Ctx) -> (Matrix, Matrix) {
    loop {
        let data = (0..n * n).map(|_| ctx.random_scalar(f.p())).collect();
        let m = Matrix::from_data(f, n, n, data).expect("square");
        if let Some(inv) = m.inverse() {
            return (m, inv);
        }
    }
}

fn conjugate_all(gens: &[Matrix], g: &Matrix, g_inv: &Matrix) -> Vec<Matrix> {
    gens.iter()
        .map(|x| g.mul(x).and_then(|y| y.mul(g_inv)).expect("square"))
        .collect()
}

/// Simple blocks a random semisimple algebra is assembled from:
/// `(matrix size, field degree)`.
const SIMPLE_BLOCKS: &[(usize, usize)] = &[(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (1, 3)];

/// A random semisimple algebra of dimension at most `max_dim`, hidden by a
/// random change of basis.
pub fn random_semisimple(p: u32, max_dim: usize, ctx: &mut Ctx) -> Result<GeneratedAlgebra> {
    let f = field(p)?;
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    let mut dim = 0;
    let count = ctx.rng.gen_range(1..=3);
    for _ in 0..count {
        let fits: Vec<_> = SIMPLE_BLOCKS
            .iter()
            .filter(|(m, k)| dim + m * m * k <= max_dim)
            .collect();
        let Some(&&(m, k)) = fits.choose(&mut ctx.rng) else {
            break;
        };
        dim += m * m * k;
        chosen.push((m, k));
    }
    if chosen.is_empty() {
        chosen.push((1, 1));
    }
    let n: usize = chosen.iter().map(|(m, k)| m * k).sum();
    let mut gens = Vec::new();
    let mut offset = 0;
    for &(m, k) in &chosen {
        for x in matrix_over_extension(f, m, k)? {
            gens.push(embed(n, offset, &x));
        }
        offset += m * k;
    }
    let (g, g_inv) = random_invertible(f, n, ctx);
    let gens = conjugate_all(&gens, &g, &g_inv);
    let shape: Vec<String> = chosen
        .iter()
        .map(|(m, k)| format!("M_{m}(GF({p}^{k}))"))
        .collect();
    Ok(GeneratedAlgebra {
        name: format!("semisimple {}", shape.join(" x ")),
        algebra: MatrixAlgebra::new(f, n, &gens)?,
        elements: Vec::new(),
    })
}

/// A random block upper triangular matrix algebra of dimension at most
/// `max_dim`, conjugated by a random invertible matrix.
pub fn random_triangular(p: u32, max_dim: usize, ctx: &mut Ctx) -> Result<GeneratedAlgebra> {
    let f = field(p)?;
    let sizes = loop {
        let groups = ctx.rng.gen_range(2..=3);
        let sizes: Vec<usize> = (0..groups).map(|_| ctx.rng.gen_range(1..=2)).collect();
        let dim: usize = (0..groups)
            .flat_map(|g| (g..groups).map(move |h| (g, h)))
            .map(|(g, h)| sizes[g] * sizes[h])
            .sum();
        if dim <= max_dim {
            break sizes;
        }
    };
    let n: usize = sizes.iter().sum();
    let group_of: Vec<usize> = sizes
        .iter()
        .enumerate()
        .flat_map(|(g, &s)| std::iter::repeat_n(g, s))
        .collect();
    let pairs = (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
    let gens = units(f, n, pairs.filter(|&(i, j)| group_of[i] <= group_of[j]));
    let (g, g_inv) = random_invertible(f, n, ctx);
    let gens = conjugate_all(&gens, &g, &g_inv);
    Ok(GeneratedAlgebra {
        name: format!("block triangular {sizes:?}"),
        algebra: MatrixAlgebra::new(f, n, &gens)?,
        elements: Vec::new(),
    })
}

/// A unital deformation `B_s` of a random semisimple or triangular `B` by a
/// random invertible `s` (so that `B_s` is unital and `B_s = B` as sets).
pub fn random_deformed(p: u32, max_dim: usize, ctx: &mut Ctx) -> Result<ScAlgebra> {
    let base = if ctx.rng.gen_bool(0.5) {
        random_semisimple(p, max_dim, ctx)?
    } else {
        random_triangular(p, max_dim, ctx)?
    };
    let sc = base.to_sc();
    let full = crate::linalg::Subspace::full(sc.field(), sc.dim());
    let s = loop {
        let s = ctx.random_in(&full);
        if sc.is_invertible(&s) {
            break s;
        }
    };
    Ok(sc
        .deform(&s.into())?
        .with_origin(format!("{} deformed", base.name)))
}

/// The small algebras behind the brute-force oracle checks, for `p` in
/// `{2, 3}`. The flag says whether the algebra is defined by 0/1 matrices
/// independently of `p`, so that its radical can be compared with the one
/// computed in large characteristic.
pub fn tiny_corpus(p: u32) -> Result<Vec<(GeneratedAlgebra, bool)>> {
    let f = field(p)?;
    let u = |n: usize, pairs: &[(usize, usize)]| units(f, n, pairs.iter().copied());
    let mk = |name: &str, n: usize, gens: Vec<Matrix>| -> Result<GeneratedAlgebra> {
        Ok(GeneratedAlgebra {
            name: format!("{name} over GF({p})"),
            algebra: MatrixAlgebra::generated_by(f, n, &gens),
            elements: Vec::new(),
        })
    };
    let nil3 = sum(&u(3, &[(0, 1), (1, 2)]));
    let mut out = vec![
        (mk("GF(p)", 1, u(1, &[(0, 0)]))?, true),
        (mk("GF(p) x GF(p)", 2, u(2, &[(0, 0), (1, 1)]))?, true),
        (
            mk(
                "dual numbers",
                2,
                vec![Matrix::identity(f, 2), Matrix::unit(f, 2, 0, 1)],
            )?,
            true,
        ),
        (mk("T_2", 2, u(2, &[(0, 0), (0, 1), (1, 1)]))?, true),
        (mk("M_2", 2, u(2, &[(0, 0), (0, 1), (1, 0), (1, 1)]))?, true),
        (
            mk("truncated x^3", 3, vec![Matrix::identity(f, 3), nil3])?,
            true,
        ),
        (
            mk("T_2 x GF(p)", 3, u(3, &[(0, 0), (0, 1), (1, 1), (2, 2)]))?,
            true,
        ),
        (
            mk(
                "M_2 x GF(p)",
                3,
                u(3, &[(0, 0), (0, 1), (1, 0), (1, 1), (2, 2)]),
            )?,
            true,
        ),
        (
            mk(
                "T_3",
                3,
                u(3, &[(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]),
            )?,
            true,
        ),
        (
            mk(
                "Kronecker-like",
                3,
                u(3, &[(0, 0), (0, 1), (0, 2), (1, 1), (2, 2)]),
            )?,
            true,
        ),
        (mk("square-zero line", 2, u(2, &[(0, 1)]))?, true),
        (mk("E11, E12", 2, u(2, &[(0, 0), (0, 1)]))?, true),
    ];
    let c = companion(f, &irreducible_poly(p, 2)?);
    out.push((mk("GF(p^2)", 2, vec![Matrix::identity(f, 2), c])?, false));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper10_shape() {
        let g = paper10(101, 1).unwrap();
        assert_eq!(g.algebra.dim(), 63);
        let a = g.element("a").unwrap();
        assert!(a.mul(a).unwrap().mul(a).unwrap().is_zero());
        assert!(matches!(
            paper10(3, 1),
            Err(Error::CharacteristicTooSmall { p: 3, needed: 64 })
        ));
    }

    #[test]
    fn pattern_counts() {
        assert_eq!(paper10_patterns::corner().len(), 23);
        assert_eq!(paper10_patterns::i0().len(), 2);
        assert_eq!(paper10_patterns::i1().len(), 15);
        assert_eq!(paper10_patterns::i2().len(), 15);
    }

    #[test]
    fn irreducible_polynomials() {
        // x^2 + 1 is irreducible over GF(3); x^2 + x + 1 is the first over GF(2).
        assert_eq!(irreducible_poly(3, 2).unwrap(), vec![1, 0, 1]);
        assert_eq!(irreducible_poly(2, 2).unwrap(), vec![1, 1, 1]);
        let q = irreducible_poly(101, 4).unwrap();
        assert_eq!(q.len(), 5);
    }

    #[test]
    fn remark_dimensions() {
        let g = remark(101).unwrap();
        assert_eq!(g.algebra.dim(), 32);
    }

    #[test]
    fn random_families_are_deterministic() {
        let a = random_semisimple(101, 20, &mut Ctx::new(4)).unwrap();
        let b = random_semisimple(101, 20, &mut Ctx::new(4)).unwrap();
        assert_eq!(a.algebra, b.algebra);
        assert!(a.algebra.dim() <= 20);
        let t = random_triangular(101, 20, &mut Ctx::new(4)).unwrap();
        assert!(t.algebra.dim() <= 20);
    }
}
