use g2kit::clifford::{self, clifford_act, omega_chi, pure_spinor_kernel, spinor_pairing, v7_gram, Spinor};
use g2kit::exactlinalg::{dot, Scalar};
use g2kit::threeform::{classify, Label};
use proptest::prelude::*;

fn vector(d: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec((-4i64..=4, -1i64..=1), d).prop_map(|v| v.into_iter().map(|(a, b)| Scalar::gaussian(a, b)).collect())
}

fn spinor() -> impl Strategy<Value = Spinor> {
    vector(8).prop_map(|v| Spinor::from_coords(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn clifford_square(v in vector(7), s in spinor()) {
        // v·(v·s) = 2B(v,v)s
        let vv = clifford_act(&v, &clifford_act(&v, &s).unwrap()).unwrap();
        let b = dot(&v, &v7_gram().apply(&v));
        prop_assert_eq!(vv, s.scale(&(&Scalar::from(2) * &b)));
    }

    #[test]
    fn pairing_is_anti_invariant(v in vector(7), s in spinor(), t in spinor()) {
        let l = spinor_pairing(&clifford_act(&v, &s).unwrap(), &t);
        let r = spinor_pairing(&s, &clifford_act(&v, &t).unwrap());
        prop_assert_eq!(l, -r);
    }

    #[test]
    fn omega_chi_is_quadratic(s in spinor(), t in -3i64..=3) {
        let t = Scalar::from(t);
        prop_assert_eq!(omega_chi(&s.scale(&t)), omega_chi(&s).scale(&(&t * &t)));
    }
}

#[test]
fn relation_holds_on_the_basis() {
    assert_eq!(clifford::clifford_relation_count(), (392, 392));
}

#[test]
fn monomials_are_pure() {
    for mask in 0..8 {
        let k = pure_spinor_kernel(&Spinor::basis(mask)).unwrap();
        assert_eq!(k.dim(), 3, "mask {mask}");
        assert!(clifford::is_isotropic(&k));
    }
}

#[test]
fn generic_spinor_gives_generic_form() {
    let chi = Spinor::parse("1+f123").unwrap();
    let w = omega_chi(&chi);
    let l = classify(&w).unwrap();
    assert_eq!(l.label, Label::W5);
    assert_eq!(l.stab_dim, 14);
    assert!(pure_spinor_kernel(&chi).unwrap().dim() < 3);
    // a pure spinor lands in a degenerate orbit
    assert_ne!(classify(&omega_chi(&Spinor::vacuum())).unwrap().label, Label::W5);
    assert!(Spinor::parse("1+f9").is_err());
    assert!(Spinor::parse("1,2,3").is_err());
}
