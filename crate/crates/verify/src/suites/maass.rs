use jacobi_core::operators::{invariance_residual, maass_h, siegel_laplacian};
use jacobi_core::testfn::random_test_function;

use super::{rel, Ctx, Space};
use crate::report::Entry;

/// Runs on `ℍ₁` and `ℍ₂` whatever the configured `n`.
pub(super) fn run(ctx: &Ctx) -> Vec<Entry> {
    let mut out = Vec::new();
    for n in [1, 2] {
        let space = Space::Siegel(n);
        let chart = space.chart();
        let name = format!("-H_1 on H_{n}");
        let claim = format!("-H_1 = Delta_{{{n};1}}");
        let ops = maass_h(1, n).and_then(|h| Ok((h, siegel_laplacian(1.0, n)?)));
        let res = match &ops {
            Ok((h, lap)) => ctx.trials(|rng| {
                let f = random_test_function(&chart, rng);
                let p = space.point(rng)?;
                Ok::<f64, jacobi_core::Error>(rel(-h.evaluate(&p, &f)?, lap.evaluate(&p, &f)?))
            }),
            Err(e) => Err(e.to_string()),
        };
        out.push(Entry::check(name, claim, ctx.cfg.tol, res));
    }
    let space = Space::Siegel(2);
    let chart = space.chart();
    for j in 1..=2 {
        let res = match maass_h(j, 2) {
            Ok(h) => ctx.trials(|rng| {
                let g = space.group_element(rng)?;
                let f = random_test_function(&chart, rng);
                let p = space.point(rng)?;
                invariance_residual(&h, g.as_ref(), &f, &p)
            }),
            Err(e) => Err(e.to_string()),
        };
        out.push(Entry::check(
            format!("H_{j} on H_2"),
            format!("H_{j}(f o g) = (H_{j} f) o g for g in Sp(2,R)"),
            ctx.cfg.tol,
            res,
        ));
    }
    out
}
