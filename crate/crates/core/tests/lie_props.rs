use g2kit::exactlinalg::Scalar;
use g2kit::jordan::JordanAlgebra;
use g2kit::liealg::{jacobi_check, killing_rank, JacobiMode, SCAlgebra};
use g2kit::magicsquare::{g2_models_crosscheck, square_symmetry_check, vinberg_build_named, VerifyPolicy};
use g2kit::rootdata::{build_root_system, identify_type, magic_dimension_formulas, z_grading, zm_grading};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn vector(d: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(-3i64..=3, d).prop_map(|v| v.into_iter().map(Scalar::from).collect())
}

fn f4() -> SCAlgebra {
    vinberg_build_named("R", "O", VerifyPolicy::None).unwrap().sc
}

fn jacobiator(g: &SCAlgebra, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
    let a = g.bracket(&g.bracket(x, y), z);
    let b = g.bracket(&g.bracket(y, z), x);
    let c = g.bracket(&g.bracket(z, x), y);
    a.iter().zip(&b).zip(&c).map(|((p, q), r)| &(p + q) + r).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn f4_bracket_is_lie(x in vector(52), y in vector(52), z in vector(52)) {
        let g = f4();
        let xy = g.bracket(&x, &y);
        let yx = g.bracket(&y, &x);
        prop_assert!(xy.iter().zip(&yx).all(|(a, b)| (a + b).is_zero()));
        prop_assert!(jacobiator(&g, &x, &y, &z).iter().all(Scalar::is_zero));
    }

    #[test]
    fn json_round_trip(x in vector(21), y in vector(21)) {
        let g = vinberg_build_named("R", "H", VerifyPolicy::None).unwrap().sc;
        let back = SCAlgebra::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(back.bracket(&x, &y), g.bracket(&x, &y));
    }

    #[test]
    fn jordan_cubic_identities(a in prop::sample::select(vec![1usize, 2, 4]), seed in 0u64..1000, t in -3i64..=3) {
        let j = JordanAlgebra::new(a).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = j.random_element(&mut rng);
        let t = Scalar::from(t);
        prop_assert_eq!(j.det(&j.scale(&m, &t)), &t.pow(3) * &j.det(&m));
        prop_assert!(j.is_zero(&j.cayley_hamilton_residual(&m)));
        // M∘adj(M) = Det(M)·1
        let p = j.product(&m, &j.adjugate(&m));
        prop_assert_eq!(p, j.scale(&j.identity(), &j.det(&m)));
    }

    #[test]
    fn gradings_partition_the_algebra(idx in 0usize..6) {
        let (letter, rank) = [('E', 6), ('E', 7), ('E', 8), ('F', 4), ('G', 2), ('D', 5)][idx];
        let rs = build_root_system(letter, rank).unwrap();
        for node in 1..=rank {
            let r = z_grading(&rs, node).unwrap();
            prop_assert_eq!(r.dims.iter().map(|d| d.1).sum::<usize>(), rs.dim());
            // symmetric about degree zero
            for &(d, n) in &r.dims {
                prop_assert_eq!(r.dim_of(-d), n);
            }
        }
        for node in 0..=rank {
            let r = zm_grading(&rs, node).unwrap();
            prop_assert_eq!(r.dims.iter().map(|d| d.1).sum::<usize>(), rs.dim());
        }
    }
}

#[test]
fn root_counts() {
    for (letter, rank, roots) in [('A', 3, 12), ('B', 3, 18), ('C', 3, 18), ('D', 4, 24), ('G', 2, 12), ('F', 4, 48), ('E', 6, 72), ('E', 7, 126), ('E', 8, 240)] {
        let rs = build_root_system(letter, rank).unwrap();
        assert_eq!(rs.roots.len(), roots, "{letter}{rank}");
        assert_eq!(identify_type(&rs.cartan), format!("{letter}{rank}"));
    }
}

#[test]
fn small_square_entries() {
    for (a, b, dim) in [("R", "R", 3), ("R", "C", 8), ("C", "C", 16), ("C", "H", 35), ("H", "H", 66)] {
        let g = vinberg_build_named(a, b, VerifyPolicy::Full).unwrap();
        assert_eq!(g.dim(), dim);
        assert!(g.jacobi.unwrap().passed);
        assert_eq!(killing_rank(&g.sc), dim);
    }
    let s = square_symmetry_check("C", "H").unwrap();
    assert!(s.passed, "{s:?}");
    assert_eq!(s.dims, (35, 35));
}

#[test]
fn corrupted_constants_are_caught() {
    let mut v = vinberg_build_named("R", "C", VerifyPolicy::None).unwrap().sc.to_json();
    let first = v["entries"][0][2].as_array().unwrap().iter().position(|c| c != "0").unwrap();
    v["entries"][0][2][first] = serde_json::json!("5");
    let g = SCAlgebra::from_json(&v).unwrap();
    assert!(!jacobi_check(&g, JacobiMode::Full).passed);
}

#[test]
fn g2_and_dimension_records() {
    assert!(g2_models_crosscheck().unwrap().passed);
    let v4: Vec<i64> = [1, 2, 4, 8].iter().map(|&a| magic_dimension_formulas(a).unwrap().v4).collect();
    assert_eq!(v4, [52, 78, 133, 248]);
    assert!(magic_dimension_formulas(3).is_err());
}
