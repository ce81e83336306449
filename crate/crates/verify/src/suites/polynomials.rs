use jacobi_core::invariants::{
    basic_generator_count, basic_generators, extra_invariants, invariance_residual, TnmPoint,
};
use jacobi_core::linalg::CMat;
use jacobi_core::sample;

use super::Ctx;
use crate::report::Entry;

/// Tolerance for polynomial invariance, which involves no derivatives.
pub(crate) const TOL: f64 = 1e-10;

pub(super) fn run(ctx: &Ctx) -> Vec<Entry> {
    let (n, m) = (ctx.cfg.n, ctx.cfg.m);
    let basic = basic_generators(n, m);
    let count = basic.len() as f64 - basic_generator_count(n, m) as f64;
    let mut out = vec![Entry::check(
        "generator count",
        "n + n m(m+1)/2 + n m(m-1)/2 + n m(m+1) basic generators",
        0.0,
        Ok(vec![count.abs()]),
    )];

    let res = ctx.trials(|rng| {
        let u = sample::random_unitary(n, rng);
        let (w, z) = sample::random_tnm(n, m, rng);
        invariance_residual(&basic, &u, &TnmPoint::new(w, z)?)
    });
    out.push(Entry::check(
        "basic generators",
        "P(u.p) = P(p) for u in U(n)",
        TOL,
        res,
    ));

    let res = ctx.trials(|rng| {
        let s = CMat::from_parts(
            &sample::random_real(m, m, rng),
            &sample::random_real(m, m, rng),
        )?;
        let extra = extra_invariants(n, m, &s)?;
        let u = sample::random_unitary(n, rng);
        let (w, z) = sample::random_tnm(n, m, rng);
        invariance_residual(&extra, &u, &TnmPoint::new(w, z)?)
    });
    out.push(Entry::check(
        "extra invariants",
        "P(u.p) = P(p) for u in U(n) and random S",
        TOL,
        res,
    ));
    out
}
