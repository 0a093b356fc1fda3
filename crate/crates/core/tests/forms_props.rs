use g2kit::exactlinalg::{random_invertible_gaussian, Scalar};
use g2kit::forms::{tuples, KForm};
use g2kit::threeform::{classify, degree7_invariant, lambda_quartic, q_of, schouten_form, six_form, Label};
use proptest::prelude::*;

fn form(n: usize, k: usize) -> impl Strategy<Value = KForm> {
    let len = tuples(n, k).len();
    prop::collection::vec(-3i64..=3, len).prop_map(move |c| {
        let v: Vec<Scalar> = c.into_iter().map(Scalar::from).collect();
        KForm::from_vector(n, k, &v)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn wedge_is_graded_commutative(a in form(6, 2), b in form(6, 3)) {
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap());
        let c = form_one(6);
        prop_assert_eq!(b.wedge(&c).unwrap(), c.wedge(&b).unwrap().scale(&Scalar::from(-1)));
    }

    #[test]
    fn wedge_is_associative(a in form(6, 1), b in form(6, 2), c in form(6, 2)) {
        prop_assert_eq!(a.wedge(&b).unwrap().wedge(&c).unwrap(), a.wedge(&b.wedge(&c).unwrap()).unwrap());
    }

    #[test]
    fn contraction_is_an_antiderivation(a in form(6, 1), b in form(6, 2), i in 1usize..=6) {
        // ι(a∧b) = ι(a)∧b − a∧ι(b) for a of degree 1
        let lhs = a.wedge(&b).unwrap().contract_basis(i);
        let rhs = b.scale(&a.coeff(&[i])).sub(&a.wedge(&b.contract_basis(i)).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pullback_is_contravariant(w in form(5, 3), s in 0u64..1000) {
        let g = random_invertible_gaussian(5, s, 1);
        let h = random_invertible_gaussian(5, s + 7, 1);
        prop_assert_eq!(w.pullback(&g.matmul(&h)).unwrap(), w.pullback(&g).unwrap().pullback(&h).unwrap());
    }

    #[test]
    fn quartic_is_homogeneous(w in form(6, 3), t in -4i64..=4) {
        let t = Scalar::from(t);
        prop_assert_eq!(lambda_quartic(&w.scale(&t)).unwrap(), &t.pow(4) * &lambda_quartic(&w).unwrap());
    }

    #[test]
    fn label_survives_pullback(k in 1usize..=5, s in 0u64..10_000) {
        let w = schouten_form(k);
        let g = random_invertible_gaussian(7, s, 1);
        prop_assert_eq!(classify(&w.pullback(&g).unwrap()).unwrap().label, classify(&w).unwrap().label);
    }

    #[test]
    fn i7_scales_by_det_cubed(s in 0u64..1000) {
        // degree 7 in ω and ω is cubic in g, so the weight is 3
        let w = schouten_form(5);
        let g = random_invertible_gaussian(7, s, 1);
        let d = g.det();
        prop_assert_eq!(degree7_invariant(&w.pullback(&g).unwrap()).unwrap(), &d.pow(3) * &degree7_invariant(&w).unwrap());
    }
}

fn form_one(n: usize) -> KForm {
    KForm::from_vector(n, 1, &(1..=n as i64).map(Scalar::from).collect::<Vec<_>>())
}

#[test]
fn representative_labels() {
    let labels: Vec<Label> = (1..=5).map(|k| classify(&schouten_form(k)).unwrap().label).collect();
    assert_eq!(labels, [Label::W1, Label::W2, Label::W3, Label::W4, Label::W5]);
    let q: Vec<usize> = (1..=5).map(|k| q_of(&schouten_form(k)).unwrap().rank()).collect();
    assert_eq!(q, [1, 1, 2, 4, 7]);
    assert_eq!(classify(&six_form(1)).unwrap().label, Label::Rank6Generic);
    assert_eq!(classify(&six_form(2)).unwrap().label, Label::Rank6Tangent);
}

#[test]
fn text_and_json_agree() {
    let w = KForm::parse(7, "e[1,2,5]+2*e[1,3,6]-(1/2)*e[1,4,7]").unwrap();
    assert_eq!(KForm::from_json(&w.to_json()).unwrap(), w);
    assert_eq!(KForm::parse(7, &w.to_string()).unwrap(), w);
    assert!(KForm::parse(7, "e[1,2,9]").is_err());
}
