use jacobi_core::chart::RealChart;
use jacobi_core::helgason::{fit_constant, helgason_at_point};
use jacobi_core::invariants::{basic_generators, generators_11, InvariantPolynomial};
use jacobi_core::operators::{d_operators_11, maass_h, siegel_trace_form, DifferentialOperator};
use jacobi_core::testfn::random_test_function;
use jacobi_core::C64;

use super::{rel, Ctx, Space};
use crate::report::{Entry, EntryKind, FittedConstant};

pub(crate) const TOL: f64 = 1e-7;

/// `(Θ(P)f)(p)` and `(Df)(p)` over the configured number of samples.
fn pairs(
    ctx: &Ctx,
    poly: &InvariantPolynomial,
    op: &DifferentialOperator,
    space: Space,
) -> Result<Vec<(C64, C64)>, String> {
    let chart = space.chart();
    ctx.collect(ctx.cfg.trials, |rng| {
        let f = random_test_function(&chart, rng);
        let p = space.point(rng)?;
        let a = helgason_at_point(poly, &f, chart, &p)?;
        let b = op.evaluate(&p, &f)?;
        Ok::<_, jacobi_core::Error>((a, b))
    })
}

/// Least-squares `c` in `Θ(P) ≈ c·D`.
fn fit(name: &str, claim: &str, pairs: &Result<Vec<(C64, C64)>, String>) -> FittedConstant {
    let fitted = pairs.clone().and_then(|v| {
        let (a, b): (Vec<C64>, Vec<C64>) = v.into_iter().unzip();
        fit_constant(&a, &b).map_err(|e| e.to_string())
    });
    match fitted {
        Ok(c) => FittedConstant {
            name: name.into(),
            claim: claim.into(),
            re: Some(c.constant.re),
            im: Some(c.constant.im),
            residual: Some(c.residual),
            detail: None,
        },
        Err(e) => FittedConstant {
            name: name.into(),
            claim: claim.into(),
            re: None,
            im: None,
            residual: None,
            detail: Some(e),
        },
    }
}

fn comparison(
    kind: EntryKind,
    name: &str,
    claim: &str,
    sign: f64,
    pairs: &Result<Vec<(C64, C64)>, String>,
) -> Entry {
    let res = pairs
        .as_ref()
        .map(|v| v.iter().map(|(a, b)| rel(*a, b * sign)).collect())
        .map_err(Clone::clone);
    let f = fit(name, claim, pairs);
    let detail = match (f.re, f.im) {
        (Some(re), Some(im)) => format!("least-squares ratio {re:.9} {im:+.1e}i"),
        _ => "no ratio".into(),
    };
    Entry::new(kind, name, claim, TOL, res).with_detail(detail)
}

pub(super) fn run(ctx: &Ctx) -> (Vec<Entry>, Vec<FittedConstant>) {
    let mut out = Vec::new();
    let mut fits = Vec::new();

    let siegel = Space::Siegel(1);
    let q1 = &basic_generators(1, 0)[0];
    match siegel_trace_form(1) {
        Ok(tr) => {
            let v = pairs(ctx, q1, &tr.scale(C64::new(16.0, 0.0)), siegel);
            out.push(comparison(
                EntryKind::Check,
                "Theta(q) on H_1",
                "Theta(q) = 4 y^2 (d_x^2 + d_y^2)",
                1.0,
                &v,
            ));
            let v = pairs(ctx, q1, &tr, siegel);
            fits.push(fit("c1", "Theta(q) = c1 tr(Y t(Y dOb) dO) on H_1", &v));
        }
        Err(e) => out.push(Entry::check("Theta(q) on H_1", "", TOL, Err(e.to_string()))),
    }

    let half = Space::HalfPlane(RealChart::new(1, 1).expect("n = 1"));
    let d = d_operators_11();
    let names = ["q", "xi", "phi", "psi"];
    for (i, (poly, op)) in generators_11().iter().zip(d.iter()).enumerate() {
        let v = pairs(ctx, poly, op, half);
        let name = format!("Theta({})", names[i]);
        out.push(comparison(
            EntryKind::Check,
            &name,
            &format!("Theta({}) = D{}", names[i], i + 1),
            1.0,
            &v,
        ));
        if i >= 2 {
            out.push(comparison(
                EntryKind::Info,
                &format!("{name} sign"),
                &format!("Theta({}) = -D{}", names[i], i + 1),
                -1.0,
                &v,
            ));
        }
    }

    // exploratory: the degree-four generator on ℍ₂ against H₂
    let q2 = basic_generators(2, 0).into_iter().find(|p| p.degree == 4);
    let fitted = match (q2, maass_h(2, 2)) {
        (Some(q2), Ok(h2)) => fit(
            "c2",
            "Theta(q_1) = c2 H_2 on H_2 (exploratory)",
            &pairs(ctx, &q2, &h2, Space::Siegel(2)),
        ),
        (None, _) => fit("c2", "", &Err("no degree-four generator".into())),
        (_, Err(e)) => fit("c2", "", &Err(e.to_string())),
    };
    fits.push(fitted);
    (out, fits)
}
