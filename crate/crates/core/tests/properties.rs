use corner_core::algebra::{
    corner_subspace, is_two_sided_ideal, one_sided_ideal, subspace_product, two_sided_ideal,
    ScAlgebra, Side,
};
use corner_core::generators::{random_deformed, random_semisimple, random_triangular};
use corner_core::linalg::{Matrix, PrimeField, Subspace};
use corner_core::rank::{right_rank, RankValue};
use corner_core::regular::inner_inverse;
use corner_core::suite::random_regular;
use corner_core::Ctx;
use proptest::prelude::*;

const P: u32 = 101;

fn field() -> PrimeField {
    PrimeField::new(P).unwrap()
}

fn algebra(family: u8, seed: u64) -> (ScAlgebra, Ctx) {
    let mut ctx = Ctx::new(seed);
    let alg = match family % 3 {
        0 => random_semisimple(P, 12, &mut ctx).unwrap().to_sc(),
        1 => random_triangular(P, 12, &mut ctx).unwrap().to_sc(),
        _ => random_deformed(P, 12, &mut ctx).unwrap(),
    };
    (alg, ctx)
}

fn random_element(alg: &ScAlgebra, ctx: &mut Ctx) -> Vec<u32> {
    ctx.random_in(&Subspace::full(alg.field(), alg.dim()))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(0..P, rows * cols)
        .prop_map(move |d| Matrix::from_data(field(), rows, cols, d).unwrap())
}

fn vectors(n: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0..P, n), 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent_and_rank_nullity_holds(m in matrix(4, 6)) {
        let r = m.rref();
        prop_assert_eq!(r.matrix.rref().matrix, r.matrix.clone());
        prop_assert_eq!(m.rank() + m.kernel().dim(), 6);
        for k in m.kernel().basis() {
            prop_assert!(m.mul_vec(k).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn sum_and_intersection_dimensions(u in vectors(6), v in vectors(6)) {
        let f = field();
        let u = Subspace::from_vectors(f, 6, u);
        let v = Subspace::from_vectors(f, 6, v);
        let s = u.sum(&v).unwrap();
        let i = u.intersect(&v).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        prop_assert!(i.is_subspace_of(&u) && i.is_subspace_of(&v));
        prop_assert!(u.is_subspace_of(&s) && v.is_subspace_of(&s));
    }

    #[test]
    fn coordinates_round_trip(u in vectors(5), c in prop::collection::vec(0..P, 5)) {
        let s = Subspace::from_vectors(field(), 5, u);
        let x = s.combine(&c[..s.dim()]);
        prop_assert_eq!(s.coords(&x), Some(c[..s.dim()].to_vec()));
    }

    #[test]
    fn inverse_is_two_sided(m in matrix(4, 4)) {
        if let Some(inv) = m.inverse() {
            let one = Matrix::identity(field(), 4);
            prop_assert_eq!(m.mul(&inv).unwrap(), one.clone());
            prop_assert_eq!(inv.mul(&m).unwrap(), one);
        } else {
            prop_assert!(m.rank() < 4);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn deformations_are_associative(family in 0u8..3, seed in any::<u64>()) {
        let (alg, mut ctx) = algebra(family, seed);
        let s = random_element(&alg, &mut ctx);
        let d = alg.deform(&s.clone().into()).unwrap();
        prop_assert!(d.check_associativity().is_ok());
        let (x, y) = (random_element(&alg, &mut ctx), random_element(&alg, &mut ctx));
        prop_assert_eq!(d.mul_raw(&x, &y), alg.mul3(&x, &s, &y));
    }

    #[test]
    fn corners_are_closed_subalgebras(family in 0u8..3, seed in any::<u64>()) {
        let (alg, mut ctx) = algebra(family, seed);
        let a = random_element(&alg, &mut ctx);
        let k = corner_subspace(&alg, &a).unwrap();
        prop_assert!(subspace_product(&alg, &k, &k).unwrap().is_subspace_of(&k));
        let x = alg.mul3(&a, &random_element(&alg, &mut ctx), &a);
        prop_assert!(k.contains(&x));
    }

    #[test]
    fn generated_ideals_absorb(family in 0u8..3, seed in any::<u64>()) {
        let (alg, mut ctx) = algebra(family, seed);
        let f = alg.field();
        let gen = Subspace::from_vectors(f, alg.dim(), [random_element(&alg, &mut ctx)]);
        let full = Subspace::full(f, alg.dim());
        let i = two_sided_ideal(&alg, &gen).unwrap();
        prop_assert!(is_two_sided_ideal(&alg, &i));
        prop_assert!(gen.is_subspace_of(&i));
        prop_assert!(subspace_product(&alg, &full, &i).unwrap().is_subspace_of(&i));
        prop_assert!(subspace_product(&alg, &i, &full).unwrap().is_subspace_of(&i));
        let r = one_sided_ideal(&alg, &gen, Side::Right).unwrap();
        prop_assert!(r.is_subspace_of(&i));
        prop_assert!(subspace_product(&alg, &r, &full).unwrap().is_subspace_of(&r));
    }

    #[test]
    fn inner_inverses_satisfy_their_equations(family in 0u8..3, seed in any::<u64>()) {
        let (alg, mut ctx) = algebra(family, seed);
        let a = random_regular(&alg, &mut ctx);
        let cert = inner_inverse(&alg, &a).unwrap();
        prop_assert_eq!(alg.mul3(&a, &cert.b, &a), a.clone());
        prop_assert!(alg.is_idempotent(&cert.e));
        prop_assert_eq!(alg.mul_raw(&cert.e, &a), a);
    }

    #[test]
    fn right_rank_is_subadditive_and_absorbs(family in 0u8..3, seed in any::<u64>()) {
        let (alg, mut ctx) = algebra(family, seed);
        let a = random_regular(&alg, &mut ctx);
        let b = random_regular(&alg, &mut ctx);
        let x = random_element(&alg, &mut ctx);
        let rank = |v: &[u32], ctx: &mut Ctx| right_rank(&alg, v, ctx).unwrap().value;
        let (ra, rb) = (rank(&a, &mut ctx), rank(&b, &mut ctx));
        if let (RankValue::Finite(m), RankValue::Finite(n)) = (ra, rb) {
            let rs = rank(&alg.add(&a, &b), &mut ctx);
            prop_assert!(matches!(rs, RankValue::Finite(k) if k <= m + n));
            for y in [alg.mul_raw(&x, &a), alg.mul_raw(&a, &x)] {
                let ry = rank(&y, &mut ctx);
                prop_assert!(matches!(ry, RankValue::Finite(k) if k <= m));
            }
        }
    }
}
