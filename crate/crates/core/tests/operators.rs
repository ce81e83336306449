use jacobi_core::chart::RealChart;
use jacobi_core::metrics::{disk_metric, laplace_beltrami, siegel_jacobi_metric, siegel_metric};
use jacobi_core::operators::*;
use jacobi_core::sample;
use jacobi_core::testfn::{random_test_function, ChartFunction};
use jacobi_core::C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SHAPES: [(usize, usize); 4] = [(1, 1), (1, 2), (2, 1), (2, 2)];

fn half_plane_point(chart: RealChart, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let p = sample::random_siegel_jacobi_point(chart.n(), chart.m(), rng).unwrap();
    chart.pack(p.omega(), p.z()).unwrap()
}

fn disk_point(chart: RealChart, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let p = sample::random_disk_point(chart.n(), chart.m(), rng).unwrap();
    chart.pack(p.w(), p.eta()).unwrap()
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / (1.0 + b.norm())
}

#[test]
fn laplacian_matches_laplace_beltrami() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (n, m) in SHAPES {
        let chart = RealChart::new(n, m).unwrap();
        for (a, b) in [(1.0, 1.0), (2.0, 0.5)] {
            let lb = laplace_beltrami(&siegel_jacobi_metric(a, b, n, m).unwrap());
            let lap = jacobi_laplacian(a, b, chart).unwrap();
            let f = random_test_function(&chart, &mut rng);
            let p = half_plane_point(chart, &mut rng);
            let r = rel(lap.evaluate(&p, &f).unwrap(), lb.evaluate(&p, &f).unwrap());
            assert!(r < 1e-9, "({n},{m}) A={a} B={b}: {r:e}");

            let lb = laplace_beltrami(&disk_metric(a, b, n, m).unwrap());
            let lap = disk_laplacian(a, b, chart).unwrap();
            let p = disk_point(chart, &mut rng);
            let r = rel(lap.evaluate(&p, &f).unwrap(), lb.evaluate(&p, &f).unwrap());
            assert!(r < 1e-9, "disk ({n},{m}) A={a} B={b}: {r:e}");
        }
    }
}

#[test]
fn disk_operators_are_cayley_transfers() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for (n, m) in SHAPES {
        let chart = RealChart::new(n, m).unwrap();
        let pairs = [
            (disk_s1(chart), op_m1(chart), 4.0),
            (disk_s2(chart), op_m2(chart), 4.0),
            (
                disk_t_entry(chart, 0, m - 1).unwrap(),
                op_t_entry(chart, 0, m - 1).unwrap(),
                4.0,
            ),
            (
                disk_k(chart).unwrap(),
                op_k(chart).unwrap(),
                4f64.powi(n as i32),
            ),
        ];
        for (d, h, c) in &pairs {
            let f = random_test_function(&chart, &mut rng);
            let p = disk_point(chart, &mut rng);
            let r = transfer_residual(d, h, *c, &f, &p).unwrap();
            assert!(r < 1e-9, "({n},{m}) {}: {r:e}", d.name());
        }
    }
}

#[test]
fn disk_operators_are_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for (n, m) in [(1, 1), (2, 1)] {
        let chart = RealChart::new(n, m).unwrap();
        for op in [disk_s1(chart), disk_s2(chart), disk_s3(chart)] {
            let g = sample::random_star_jacobi(n, m, &mut rng, 0.5).unwrap();
            let f = random_test_function(&chart, &mut rng);
            let p = disk_point(chart, &mut rng);
            let r = invariance_residual(&op, &g, &f, &p).unwrap();
            assert!(r < 1e-9, "({n},{m}) {}: {r:e}", op.name());
        }
    }
}

#[test]
fn higher_order_operators_are_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for (n, m) in [(1, 1), (1, 2), (2, 1)] {
        let chart = RealChart::new(n, m).unwrap();
        let ops = [
            op_k(chart).unwrap(),
            op_m3(chart),
            op_p(chart, 0, m - 1).unwrap(),
        ];
        for op in &ops {
            let g = sample::random_jacobi(n, m, &mut rng, 0.5).unwrap();
            let f = random_test_function(&chart, &mut rng);
            let p = half_plane_point(chart, &mut rng);
            let r = invariance_residual(op, &g, &f, &p).unwrap();
            assert!(r < 1e-9, "({n},{m}) {}: {r:e}", op.name());
        }
    }
}

#[test]
fn printed_m2_only_holds_for_n_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for (n, m) in [(1, 1), (1, 2), (2, 1)] {
        let chart = RealChart::new(n, m).unwrap();
        let f = random_test_function(&chart, &mut rng);
        let p = half_plane_point(chart, &mut rng);
        let a = op_m2(chart).evaluate(&p, &f).unwrap();
        let b = op_m2_printed(chart).evaluate(&p, &f).unwrap();
        if n == 1 {
            assert!(rel(a, b) < 1e-12);
        } else {
            assert!(rel(a, b) > 1e-6, "the V terms should differ at n = 2");
        }
        let g = sample::random_jacobi(n, m, &mut rng, 0.5).unwrap();
        let r = invariance_residual(&op_m2_printed(chart), &g, &f, &p).unwrap();
        assert_eq!(r < 1e-9, n == 1, "({n},{m}) printed residual {r:e}");
    }
}

#[test]
fn maass_operator_is_minus_laplacian() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for n in [1, 2] {
        let chart = RealChart::new(n, 0).unwrap();
        let f = random_test_function(&chart, &mut rng);
        let p = sample::random_siegel_point(n, &mut rng).unwrap();
        let p = chart
            .pack(p.omega(), &jacobi_core::linalg::CMat::complex_zeros(0, n))
            .unwrap();
        let h1 = maass_h(1, n).unwrap().evaluate(&p, &f).unwrap();
        let lap = siegel_laplacian(1.0, n).unwrap().evaluate(&p, &f).unwrap();
        let lb = laplace_beltrami(&siegel_metric(1.0, n).unwrap())
            .evaluate(&p, &f)
            .unwrap();
        assert!(rel(-h1, lap) < 1e-10);
        assert!(rel(lap, lb) < 1e-10);
    }
}

#[test]
fn constants_are_annihilated() {
    let one = jacobi_core::testfn::TestFunction::constant(C64::new(1.0, 0.0));
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let chart = RealChart::new(2, 1).unwrap();
    let p = half_plane_point(chart, &mut rng);
    assert_eq!(one.value(&p).unwrap(), C64::new(1.0, 0.0));
    for op in [op_m1(chart), op_m2(chart), op_m3(chart)] {
        assert!(
            op.evaluate(&p, &one).unwrap().norm() < 1e-14,
            "{}",
            op.name()
        );
    }
}
