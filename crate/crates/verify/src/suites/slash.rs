use jacobi_core::chart::RealChart;
use jacobi_core::linalg::{Mat, RMat};
use jacobi_core::maassjacobi::{cocycle_residual, compat_residual, SlashData};
use jacobi_core::operators::{jacobi_laplacian, DifferentialOperator, Model};
use jacobi_core::sample;
use jacobi_core::testfn::random_test_function;

use super::{built, Built, Ctx, Space, CONTROL_THRESHOLD, GROUP_SCALE};
use crate::report::{Entry, EntryKind};

fn half_identity(m: usize) -> RMat {
    Mat::from_fn(m, m, &0.0, |i, j| if i == j { 0.5 } else { 0.0 })
}

fn compat(ctx: &Ctx, kind: EntryKind, op: &Built, data: &SlashData, tol: f64) -> Entry {
    let cfg = ctx.cfg;
    let space = Space::HalfPlane(RealChart::new(cfg.n, cfg.m).expect("validated"));
    let claim = format!(
        "D(f|[g]) = (Df)|[g] with k = {}, M = {}",
        data.k(),
        if data.index().max_abs() == 0.0 {
            "0"
        } else {
            "I/2"
        }
    );
    let res = match op {
        Ok(op) => ctx.trials(|rng| {
            let g = sample::random_jacobi(cfg.n, cfg.m, rng, GROUP_SCALE)?;
            let f = random_test_function(&space.chart(), rng);
            let p = space.point(rng)?;
            compat_residual(op, data, &f, &g, &p)
        }),
        Err(e) => Err(e.clone()),
    };
    let name = op.as_ref().map_or("unbuilt", |o| o.name());
    Entry::new(kind, format!("{name}, k={}", data.k()), claim, tol, res)
}

pub(super) fn run(ctx: &Ctx) -> Vec<Entry> {
    let cfg = ctx.cfg;
    let (n, m) = (cfg.n, cfg.m);
    let chart = RealChart::new(n, m).expect("validated");
    let plain = SlashData::new(0, RMat::real_zeros(m, m)).expect("zero index");
    let weighted = SlashData::new(1, half_identity(m)).expect("I/2 is half-integral");
    let lap = built(jacobi_laplacian(cfg.a, cfg.b, chart));
    let id: Built = Ok(DifferentialOperator::identity(chart, Model::HalfPlane));
    let dx = built(DifferentialOperator::partial(
        chart,
        Model::HalfPlane,
        chart.x(0, 0),
    ));

    let mut out = vec![
        compat(ctx, EntryKind::Check, &lap, &plain, cfg.tol),
        compat(ctx, EntryKind::Check, &id, &weighted, cfg.tol),
        compat(ctx, EntryKind::Info, &lap, &weighted, cfg.tol)
            .with_detail("the Laplacian need not commute with a nontrivial slash action"),
        compat(ctx, EntryKind::Control, &dx, &plain, CONTROL_THRESHOLD),
    ];

    let laws = ctx.collect(cfg.trials, |rng| {
        let g1 = sample::random_jacobi(n, m, rng, GROUP_SCALE)?;
        let g2 = sample::random_jacobi(n, m, rng, GROUP_SCALE)?;
        let f = random_test_function(&chart, rng);
        let p = Space::HalfPlane(chart).point(rng)?;
        cocycle_residual(&weighted, &f, &g1, &g2, &p)
    });
    let right = laws.clone().map(|v| v.iter().map(|c| c.right).collect());
    let left = laws.map(|v| v.iter().map(|c| c.left).collect());
    out.push(Entry::check(
        "right composition",
        "f|[g1 g2] = (f|[g1])|[g2]",
        cfg.tol,
        right,
    ));
    out.push(
        Entry::info("left composition", "f|[g1 g2] = (f|[g2])|[g1]", left)
            .with_detail("the action is a right action; the left law is not expected"),
    );
    out
}
