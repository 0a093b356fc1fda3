use g2kit::exactlinalg::{Matrix, Scalar, SparseSystem};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, -20i64..=20, 1i64..=6).prop_map(|(a, b, d)| &Scalar::gaussian(a, b) * &Scalar::frac(1, d))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    // Small entries with many zeros so rank deficiency actually occurs.
    prop::collection::vec(prop_oneof![3 => Just(Scalar::zero()), 2 => scalar()], rows * cols)
        .prop_map(move |v| Matrix::from_flat(rows, cols, v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn display_parses_back(a in scalar()) {
        let back: Scalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn rank_is_transpose_invariant(m in matrix(4, 6)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert_eq!(m.rank(), m.rref().1.len());
    }

    #[test]
    fn rank_nullity_and_kernel(m in matrix(5, 7)) {
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.dim(), 7);
        for v in k.basis() {
            prop_assert!(m.apply(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn sparse_kernel_matches_dense(m in matrix(6, 8)) {
        let mut sys = SparseSystem::new(8);
        for i in 0..6 {
            sys.push_dense(m.row(i));
        }
        prop_assert_eq!(sys.kernel(), m.kernel());
    }

    #[test]
    fn solve_is_consistent(m in matrix(4, 4), x in prop::collection::vec(scalar(), 4)) {
        let rhs = m.apply(&x);
        let y = m.solve(&rhs).expect("consistent by construction");
        prop_assert_eq!(m.apply(&y), rhs);
    }
}

#[test]
fn inverse_and_det() {
    let m = Matrix::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
    assert_eq!(m.det(), Scalar::from(18));
    assert_eq!(m.matmul(&m.inverse().unwrap()), Matrix::identity(3));
    let s = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
    assert!(s.inverse().is_none());
    assert_eq!(s.rank(), 1);
}
