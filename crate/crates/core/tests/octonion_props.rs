use g2kit::composition::{self, classify_four_subalgebra, CompAlgebra, FourClass};
use g2kit::exactlinalg::{Scalar, Subspace};
use g2kit::suite::{four_subalgebra_representatives, random_isotropic_imaginary};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn element(d: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec((-4i64..=4, -2i64..=2), d).prop_map(|v| v.into_iter().map(|(a, b)| Scalar::gaussian(a, b)).collect())
}

fn assoc(o: &CompAlgebra, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
    let l = o.mul(&o.mul(x, y), z);
    let r = o.mul(x, &o.mul(y, z));
    l.iter().zip(&r).map(|(a, b)| a - b).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn octonions_compose_and_alternate(x in element(8), y in element(8)) {
        for o in [composition::canonical_octonions(), composition::split_octonions()] {
            prop_assert_eq!(o.norm(&o.mul(&x, &y)), &o.norm(&x) * &o.norm(&y));
            prop_assert!(assoc(&o, &x, &x, &y).iter().all(Scalar::is_zero));
            prop_assert!(assoc(&o, &y, &x, &x).iter().all(Scalar::is_zero));
            prop_assert_eq!(o.conjugate(&o.mul(&x, &y)), o.mul(&o.conjugate(&y), &o.conjugate(&x)));
        }
    }

    #[test]
    fn moufang(x in element(8), y in element(8), z in element(8)) {
        let o = composition::canonical_octonions();
        // z(x(zy)) = ((zx)z)y
        let l = o.mul(&z, &o.mul(&x, &o.mul(&z, &y)));
        let r = o.mul(&o.mul(&o.mul(&z, &x), &z), &y);
        prop_assert_eq!(l, r);
    }

    #[test]
    fn quaternions_associate(x in element(4), y in element(4), z in element(4)) {
        let h = composition::quaternions();
        prop_assert!(assoc(&h, &x, &y, &z).iter().all(Scalar::is_zero));
    }

    #[test]
    fn isotropic_kernels(seed in 0u64..10_000) {
        let o = composition::canonical_octonions();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_isotropic_imaginary(&o, &mut rng);
        prop_assert!(o.norm(&x).is_zero() && o.is_imaginary(&x));
        let k = composition::left_mult_kernel(&o, &x, true).unwrap();
        prop_assert_eq!(k.dim(), 3);
        prop_assert!(k.contains(&x));
        prop_assert_eq!(composition::restricted_gram(&o, &k).rank(), 0);
        prop_assert_eq!(k, composition::contraction_kernel(&o, &x));
    }
}

#[test]
fn sedenions_lose_the_norm() {
    let r = composition::check_identities(&composition::sedenions(), composition::Identity::NormMult, 200, 0);
    assert!(!r.passed);
    assert!(r.witness.is_some());
}

#[test]
fn four_dimensional_subalgebras() {
    let o = composition::canonical_octonions();
    let reps = four_subalgebra_representatives(&o);
    let classes: Vec<FourClass> = reps.iter().map(|a| classify_four_subalgebra(&o, a).unwrap().0).collect();
    assert_eq!(classes, [FourClass::R4Quaternion, FourClass::R2NullPlane, FourClass::R1Line]);
    for a in &reps {
        assert_eq!(a.dim(), 4);
        assert!(a.contains(&o.one()));
    }
    // R2's witness is the radical, a null-plane
    let (_, w) = classify_four_subalgebra(&o, &reps[1]).unwrap();
    assert!(composition::is_null_plane(&o, &w.unwrap()).unwrap());
    // a non-closed span is rejected
    let open = Subspace::from_spanning(8, vec![o.one(), o.basis(1), o.basis(2), o.basis(4)]);
    assert!(classify_four_subalgebra(&o, &open).is_err());
}

#[test]
fn sextonions_close_with_rank_four() {
    let o = composition::canonical_octonions();
    let mut a = o.zero();
    a[4] = Scalar::one();
    a[5] = Scalar::i();
    let mut b = o.zero();
    b[6] = Scalar::one();
    b[7] = -Scalar::i();
    let s = composition::sextonions(&o, &Subspace::from_spanning(8, vec![a, b])).unwrap();
    assert!(s.closed);
    assert_eq!(s.q_rank, 4);
    assert!(s.isomorphic_to_model);
}
