use jacobi_core::chart::RealChart;
use jacobi_core::metrics::{
    disk_metric, laplace_beltrami, siegel_jacobi_metric, siegel_metric, MetricTensor,
};
use jacobi_core::operators::{
    disk_laplacian, jacobi_laplacian, siegel_laplacian, DifferentialOperator,
};
use jacobi_core::testfn::random_test_function;

use super::{rel, Ctx, Space};
use crate::report::Entry;

fn entry(
    ctx: &Ctx,
    space: Space,
    op: jacobi_core::Result<DifferentialOperator>,
    metric: jacobi_core::Result<MetricTensor>,
) -> Entry {
    let (op, lb) = match (op, metric) {
        (Ok(op), Ok(g)) => (op, laplace_beltrami(&g)),
        (Err(e), _) | (_, Err(e)) => {
            return Entry::check("unbuilt", "", ctx.cfg.tol, Err(e.to_string()))
        }
    };
    let chart = space.chart();
    let res = ctx.trials(|rng| {
        let f = random_test_function(&chart, rng);
        let p = space.point(rng)?;
        Ok::<f64, jacobi_core::Error>(rel(op.evaluate(&p, &f)?, lb.evaluate(&p, &f)?))
    });
    Entry::check(
        op.name(),
        format!(
            "{} equals the Laplace-Beltrami operator of its metric",
            op.name()
        ),
        ctx.cfg.tol,
        res,
    )
}

pub(super) fn run(ctx: &Ctx) -> Vec<Entry> {
    let cfg = ctx.cfg;
    let (n, m) = (cfg.n, cfg.m);
    let chart = RealChart::new(n, m).expect("validated");
    let mut out = Vec::new();
    // the configured weights and a second, unbalanced pair
    for (a, b) in [(cfg.a, cfg.b), (2.0 * cfg.a, 0.5 * cfg.b)] {
        out.push(entry(
            ctx,
            Space::Siegel(n),
            siegel_laplacian(a, n),
            siegel_metric(a, n),
        ));
        out.push(entry(
            ctx,
            Space::HalfPlane(chart),
            jacobi_laplacian(a, b, chart),
            siegel_jacobi_metric(a, b, n, m),
        ));
        out.push(entry(
            ctx,
            Space::Disk(chart),
            disk_laplacian(a, b, chart),
            disk_metric(a, b, n, m),
        ));
    }
    out
}
