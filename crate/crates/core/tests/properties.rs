use jacobi_core::chart::RealChart;
use jacobi_core::groups::{cayley, cayley_inverse};
use jacobi_core::invariants::{basic_generators, invariance_residual as poly_residual, TnmPoint};
use jacobi_core::jet::Jet;
use jacobi_core::metrics::{pullback_invariance, siegel_jacobi_metric};
use jacobi_core::operators::{invariance_residual, jacobi_laplacian, op_m1, op_m2};
use jacobi_core::sample;
use jacobi_core::testfn::random_test_function;
use jacobi_core::C64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn shapes() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![Just((1, 1)), Just((1, 2)), Just((2, 1))]
}

fn point(chart: RealChart, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let p = sample::random_siegel_jacobi_point(chart.n(), chart.m(), rng).unwrap();
    chart.pack(p.omega(), p.z()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn jet_product_rule(a in prop::collection::vec(-2.0f64..2.0, 6), b in prop::collection::vec(-2.0f64..2.0, 6)) {
        let coeffs = |v: &[f64]| v.iter().map(|&x| C64::new(x, 0.5 * x)).collect::<Vec<_>>();
        let f = Jet::from_coeffs(2, 2, coeffs(&a)).unwrap();
        let g = Jet::from_coeffs(2, 2, coeffs(&b)).unwrap();
        for var in 0..2 {
            let lhs = (&f * &g).partial(var).unwrap();
            let rhs = &(&f.partial(var).unwrap() * &g.truncate(1)) + &(&f.truncate(1) * &g.partial(var).unwrap());
            prop_assert!(lhs.distance(&rhs) < 1e-12);
        }
    }

    #[test]
    fn jacobi_action_is_a_left_action(seed in any::<u64>(), (n, m) in shapes()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g1 = sample::random_jacobi(n, m, &mut rng, 0.5).unwrap();
        let g2 = sample::random_jacobi(n, m, &mut rng, 0.5).unwrap();
        let p = sample::random_siegel_jacobi_point(n, m, &mut rng).unwrap();
        let lhs = g1.mul(&g2).unwrap().act(&p).unwrap();
        let rhs = g1.act(&g2.act(&p).unwrap()).unwrap();
        prop_assert!(lhs.omega().max_dist(rhs.omega()) < 1e-9);
        prop_assert!(lhs.z().max_dist(rhs.z()) < 1e-9);
        prop_assert!(lhs.omega().imag_part().is_positive_definite());
    }

    #[test]
    fn cayley_round_trip(seed in any::<u64>(), (n, m) in shapes()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = sample::random_siegel_jacobi_point(n, m, &mut rng).unwrap();
        let back = cayley(&cayley_inverse(&p).unwrap()).unwrap();
        prop_assert!(back.omega().max_dist(p.omega()) < 1e-10);
        prop_assert!(back.z().max_dist(p.z()) < 1e-10);
    }

    #[test]
    fn metric_is_invariant(seed in any::<u64>(), (n, m) in shapes(), a in 0.2f64..3.0, b in 0.2f64..3.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chart = RealChart::new(n, m).unwrap();
        let metric = siegel_jacobi_metric(a, b, n, m).unwrap();
        let g = sample::random_jacobi(n, m, &mut rng, 0.5).unwrap();
        let p = point(chart, &mut rng);
        prop_assert!(pullback_invariance(&metric, &g, &p).unwrap() < 1e-9);
    }

    #[test]
    fn basic_generators_are_unitarily_invariant(seed in any::<u64>(), (n, m) in shapes()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (omega, z) = sample::random_tnm(n, m, &mut rng);
        let p = TnmPoint::new(omega, z).unwrap();
        let u = sample::random_unitary(n, &mut rng);
        prop_assert!(poly_residual(&basic_generators(n, m), &u, &p).unwrap() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn second_order_operators_commute_with_the_action(seed in any::<u64>(), (n, m) in shapes(), a in 0.2f64..3.0, b in 0.2f64..3.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chart = RealChart::new(n, m).unwrap();
        let g = sample::random_jacobi(n, m, &mut rng, 0.5).unwrap();
        let f = random_test_function(&chart, &mut rng);
        let p = point(chart, &mut rng);
        for op in [op_m1(chart), op_m2(chart), jacobi_laplacian(a, b, chart).unwrap()] {
            let r = invariance_residual(&op, &g, &f, &p).unwrap();
            prop_assert!(r < 1e-8, "{} residual {r:e}", op.name());
        }
    }
}
