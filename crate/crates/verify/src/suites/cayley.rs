use jacobi_core::chart::RealChart;
use jacobi_core::groups::{cayley, star_conjugate, CayleyMap};
use jacobi_core::linalg::{CMat, DiskJacobiPoint, SiegelJacobiPoint};
use jacobi_core::metrics::{disk_metric, pullback_residual, siegel_jacobi_metric};
use jacobi_core::operators::*;
use jacobi_core::sample;
use jacobi_core::testfn::random_test_function;

use super::{built, unbuilt, Built, Ctx, Space, CONTROL_THRESHOLD, GROUP_SCALE};
use crate::report::{Entry, EntryKind};

/// Tolerance for the point-level intertwining identity.
const COMPAT_TOL: f64 = 1e-9;

fn max_abs(a: &CMat) -> f64 {
    a.max_dist(&CMat::complex_zeros(a.rows(), a.cols()))
}

fn distance(a: &SiegelJacobiPoint, b: &SiegelJacobiPoint) -> f64 {
    a.omega().max_dist(b.omega()).max(a.z().max_dist(b.z()))
}

/// `(disk operator, half-plane operator, factor)` with `disk = factor · Φ^*(half-plane)`.
fn transfers(chart: RealChart, a: f64, b: f64) -> Vec<(Built, Built, f64)> {
    let (n, m) = (chart.n() as i32, chart.m());
    let mut out = vec![
        (Ok(disk_s1(chart)), Ok(op_m1(chart)), 4.0),
        (Ok(disk_s2(chart)), Ok(op_m2(chart)), 4.0),
        (
            built(disk_laplacian(a, b, chart)),
            built(jacobi_laplacian(a, b, chart)),
            // Φ is an isometry, so the Laplace-Beltrami operators agree outright
            1.0,
        ),
        (built(disk_k(chart)), built(op_k(chart)), 4f64.powi(n)),
        (Ok(disk_s3(chart)), Ok(op_m3(chart)), 16.0),
    ];
    for k in 0..m {
        for l in 0..m {
            out.push((
                built(disk_t_entry(chart, k, l)),
                built(op_t_entry(chart, k, l)),
                4.0,
            ));
            out.push((
                built(disk_q(chart, k, l)),
                built(op_p(chart, k, l)),
                4f64.powi(n + 1),
            ));
        }
    }
    out
}

fn transfer_entry(ctx: &Ctx, kind: EntryKind, pair: &(Built, Built, f64), tol: f64) -> Entry {
    let chart = RealChart::new(ctx.cfg.n, ctx.cfg.m).expect("validated");
    let space = Space::Disk(chart);
    match pair {
        (Ok(d), Ok(h), c) => {
            let res = ctx.trials(|rng| {
                let f = random_test_function(&chart, rng);
                let p = space.point(rng)?;
                transfer_residual(d, h, *c, &f, &p)
            });
            Entry::new(
                kind,
                format!("{} ~ {}", d.name(), h.name()),
                format!("{} = {c} Phi^*({})", d.name(), h.name()),
                tol,
                res,
            )
        }
        (Err(e), ..) | (_, Err(e), _) => Entry::new(kind, "unbuilt", "", tol, unbuilt(e)),
    }
}

pub(super) fn run(ctx: &Ctx) -> Vec<Entry> {
    let cfg = ctx.cfg;
    let (n, m) = (cfg.n, cfg.m);
    let chart = RealChart::new(n, m).expect("validated");
    let mut out = Vec::new();

    let base = cayley(&DiskJacobiPoint::origin(n, m))
        .map(|p| vec![distance(&p, &SiegelJacobiPoint::base(n, m))])
        .map_err(|e| e.to_string());
    out.push(Entry::check(
        "Phi(0,0)",
        "Phi(0, 0) = (iI, 0) exactly",
        0.0,
        base,
    ));

    let compat = ctx.trials(|rng| {
        let g = sample::random_jacobi(n, m, rng, GROUP_SCALE)?;
        let disk = sample::random_disk_point(n, m, rng)?;
        let lhs = g.act(&cayley(&disk)?)?;
        let rhs = cayley(&star_conjugate(&g).act(&disk)?)?;
        let scale = max_abs(lhs.omega()).max(max_abs(lhs.z()));
        Ok::<f64, jacobi_core::Error>(distance(&lhs, &rhs) / (1.0 + scale))
    });
    out.push(Entry::check(
        "intertwining",
        "g . Phi(W, eta) = Phi(T^-1 g T . (W, eta))",
        COMPAT_TOL,
        compat,
    ));

    let metric = ctx.trials(|rng| {
        let src = disk_metric(cfg.a, cfg.b, n, m)?;
        let dst = siegel_jacobi_metric(cfg.a, cfg.b, n, m)?;
        let p = Space::Disk(chart).point(rng)?;
        pullback_residual(&src, &dst, &CayleyMap { chart }, &p)
    });
    out.push(Entry::check(
        "metric pullback",
        "Phi^* of the half-plane metric is the disk metric",
        cfg.tol,
        metric,
    ));

    for pair in transfers(chart, cfg.a, cfg.b) {
        out.push(transfer_entry(ctx, EntryKind::Check, &pair, cfg.tol));
    }
    let wrong = (Ok(disk_s1(chart)), Ok(op_m1(chart)), 1.0);
    out.push(transfer_entry(
        ctx,
        EntryKind::Control,
        &wrong,
        CONTROL_THRESHOLD,
    ));
    out
}
