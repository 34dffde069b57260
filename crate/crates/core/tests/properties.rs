use proptest::prelude::*;
use wigner::reconstruct::{check_cross_consistency, fix_phases, map_basis, slice_map};
use wigner::{
    canonical_ray, gauge_residual, induced_map, ray_function, reconstruct, verify_reproduction,
    Complex64, Matrix64, Ray64, RayMapOracle, StateVector64, SymmetryOperator32,
    SymmetryOperator64, Tolerances32, Tolerances64,
};

fn complex() -> impl Strategy<Value = Complex64> {
    (-5.0f64..5.0, -5.0f64..5.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn state(dim: usize) -> impl Strategy<Value = StateVector64> {
    prop::collection::vec(complex(), dim)
        .prop_filter("nonzero", |v| {
            v.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-6
        })
        .prop_map(|v| StateVector64::new(v).unwrap())
}

fn state_pair() -> impl Strategy<Value = (StateVector64, StateVector64)> {
    (1usize..8).prop_flat_map(|d| (state(d), state(d)))
}

fn nonzero_scalar() -> impl Strategy<Value = Complex64> {
    complex().prop_filter("nonzero", |z| z.norm() > 1e-3)
}

proptest! {
    #[test]
    fn canonical_ray_is_phase_invariant(v in (1usize..8).prop_flat_map(state), theta in 0.0f64..std::f64::consts::TAU) {
        let a = canonical_ray(&v).unwrap();
        let b = canonical_ray(&v.scale(Complex64::from_polar(1.0, theta))).unwrap();
        prop_assert!(a.approx_eq(&b, 1e-12));
        prop_assert!((a.rep().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ray_function_ignores_representatives((e, f) in state_pair(), c1 in nonzero_scalar(), c2 in nonzero_scalar()) {
        let u = ray_function(&canonical_ray(&e).unwrap(), &canonical_ray(&f).unwrap()).unwrap();
        let v = ray_function(&canonical_ray(&e.scale(c1)).unwrap(), &canonical_ray(&f.scale(c2)).unwrap()).unwrap();
        prop_assert!((u - v).abs() <= 1e-12);
        prop_assert!((0.0..=1.0).contains(&u));
    }

    #[test]
    fn ray_function_is_symmetric((e, f) in state_pair()) {
        let r = canonical_ray(&e).unwrap();
        let s = canonical_ray(&f).unwrap();
        prop_assert!((ray_function(&r, &s).unwrap() - ray_function(&s, &r).unwrap()).abs() <= 1e-15);
    }

    #[test]
    fn antiunitary_action_is_antilinear(seed in 0u64..1000, x in state(3), c in complex()) {
        let op = SymmetryOperator64::haar_random(3, true, seed);
        let lhs = op.apply(&x.scale(c)).unwrap();
        let rhs = op.apply(&x).unwrap().scale(c.conj());
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
    }

    #[test]
    fn projective_scaling_does_not_change_oracle(seed in 0u64..1000, c in nonzero_scalar(), x in state(4)) {
        let u = SymmetryOperator64::haar_random(4, false, seed);
        let a = wigner::general_induced_map(u.matrix().clone(), false).unwrap();
        let b = wigner::general_induced_map(u.matrix().scale(c), false).unwrap();
        let r = canonical_ray(&x).unwrap();
        prop_assert!(a.image(&r).unwrap().approx_eq(&b.image(&r).unwrap(), 1e-12));
    }

    #[test]
    fn round_trip_any_seed(seed in 0u64..10_000, dim in 2usize..7, anti in any::<bool>()) {
        let op = SymmetryOperator64::haar_random(dim, anti, seed);
        let oracle = induced_map(&op).unwrap();
        let r = reconstruct(&oracle, dim, &Tolerances64::default()).unwrap();
        prop_assert!(r.unitary_valid);
        prop_assert_eq!(r.operator.is_antiunitary(), anti);
        prop_assert!(gauge_residual(&op, &r.operator).unwrap() <= 1e-8);
    }
}

#[test]
fn oracle_is_deterministic() {
    let op = SymmetryOperator64::haar_random(5, true, 3);
    let oracle = induced_map(&op).unwrap();
    let r = canonical_ray(&wigner::random_state(5, 8).unwrap()).unwrap();
    assert_eq!(oracle.image(&r).unwrap(), oracle.image(&r).unwrap());
}

#[test]
fn reconstruction_is_bit_reproducible() {
    let op = SymmetryOperator64::haar_random(6, false, 12);
    let oracle = induced_map(&op).unwrap();
    let tol = Tolerances64::default();
    assert_eq!(
        reconstruct(&oracle, 6, &tol).unwrap(),
        reconstruct(&oracle, 6, &tol).unwrap()
    );
    let a = wigner::run_full_conformance(&op, 4, &tol).unwrap();
    let b = wigner::run_full_conformance(&op, 4, &tol).unwrap();
    assert_eq!(a, b);
}

#[test]
fn reconstructed_operator_preserves_ray_function() {
    let tol = Tolerances64::default();
    for (seed, anti) in [(1, false), (2, true), (3, false)] {
        let op = SymmetryOperator64::haar_random(7, anti, seed);
        let r = reconstruct(&induced_map(&op).unwrap(), 7, &tol).unwrap();
        assert!(r.unitary_valid);
        let mut worst = 0.0f64;
        for k in 0..1000u64 {
            let x = wigner::random_state(7, 2 * k).unwrap();
            let y = wigner::random_state(7, 2 * k + 1).unwrap();
            let before =
                ray_function(&canonical_ray(&x).unwrap(), &canonical_ray(&y).unwrap()).unwrap();
            let fx = canonical_ray(&r.operator.apply(&x).unwrap()).unwrap();
            let fy = canonical_ray(&r.operator.apply(&y).unwrap()).unwrap();
            worst = worst.max((ray_function(&fx, &fy).unwrap() - before).abs());
        }
        assert!(worst <= 1e-10, "worst = {worst:e}");
    }
}

/// Independent route to the slice map: for a matrix oracle, the image of
/// `(1, y)` is `A (1, y)` up to a scalar, so its slice coordinates in a basis
/// built from normalized columns of `A` can be written down directly.
#[test]
fn slice_map_matches_direct_matrix_formula() {
    let op = SymmetryOperator64::haar_random(4, false, 77);
    let oracle = induced_map(&op).unwrap();
    let tol = Tolerances64::default();
    let basis = map_basis(&oracle, 4, &tol).unwrap();
    let fixed = fix_phases(&oracle, &basis, &tol).unwrap();
    let tail = [
        Complex64::new(0.3, -1.1),
        Complex64::new(2.0, 0.5),
        Complex64::new(-0.7, 0.0),
    ];
    let y = slice_map(&oracle, &fixed.basis, &tail, &tol).unwrap();

    // The fixed columns are e^{i t} U e_k for one common t; coordinates of
    // U (1, tail) in that basis are (1, tail) times e^{-i t}, so the slice
    // point is exactly `tail`.
    for (a, b) in y.iter().zip(&tail) {
        assert!((a - b).norm() < 1e-12, "{a} vs {b}");
    }
    assert!(check_cross_consistency(&oracle, &fixed.basis, &fixed.scales, &tol).unwrap() < 1e-12);
}

#[test]
fn perturbed_unitaries_fail_hypotheses() {
    let tol = Tolerances64::default();
    for seed in 0..5 {
        let u = SymmetryOperator64::haar_random(4, false, seed);
        let noise = Matrix64::random_normal(4, 4, &mut {
            use rand::SeedableRng;
            rand_chacha::ChaCha8Rng::seed_from_u64(1000 + seed)
        });
        let a = u
            .matrix()
            .add(&noise.scale(Complex64::new(0.1, 0.0)))
            .unwrap();
        let oracle = wigner::general_induced_map(a, false).unwrap();
        let report = wigner::check_orthogonality_preservation(&oracle, 200, seed, &tol).unwrap();
        assert!(!report.passed);
        let inv = wigner::check_ray_function_invariance(&oracle, 200, seed, &tol).unwrap();
        assert!(!inv.passed);
    }
}

#[test]
fn single_precision_pipeline() {
    let tol = Tolerances32::default();
    let op = SymmetryOperator32::haar_random(4, true, 5);
    let oracle = induced_map(&op).unwrap();
    let r = reconstruct(&oracle, 4, &tol).unwrap();
    assert!(r.unitary_valid);
    assert!(r.operator.is_antiunitary());
    assert!(gauge_residual(&op, &r.operator).unwrap() < 1e-4);
    assert!(verify_reproduction(&r.operator, &oracle, 50, 0).unwrap() < 1e-4);
}

#[test]
fn ray_from_axis_matches_canonicalized_basis_vector() {
    for i in 0..4 {
        assert_eq!(
            Ray64::axis(4, i),
            canonical_ray(&StateVector64::basis(4, i)).unwrap()
        );
    }
}
