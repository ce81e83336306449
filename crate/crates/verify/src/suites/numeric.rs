use jacobi_core::chart::RealChart;
use jacobi_core::operators::{d_operators_11, DifferentialOperator};
use jacobi_core::testfn::random_test_function;
use jacobi_core::C64;

use super::{Ctx, Space, CONTROL_THRESHOLD};
use crate::report::Entry;

/// Relative tolerance for identities between operators of order up to six.
pub(crate) const TOL: f64 = 1e-7;

/// `Σ c_w D_{w₁}∘D_{w₂}∘…` as a list of (coefficient, word) pairs; indices are 0-based.
type Words = &'static [(f64, &'static [usize])];

const RELATIONS: [(&str, &str, Words); 7] = [
    (
        "(a)",
        "[D1,D2] = 2 D3",
        &[(1.0, &[0, 1]), (-1.0, &[1, 0]), (-2.0, &[2])],
    ),
    (
        "(b)",
        "[D1,D3] = 2 D1 D2 - 2 D3",
        &[
            (1.0, &[0, 2]),
            (-1.0, &[2, 0]),
            (-2.0, &[0, 1]),
            (2.0, &[2]),
        ],
    ),
    (
        "(c)",
        "[D2,D3] = -D2^2",
        &[(1.0, &[1, 2]), (-1.0, &[2, 1]), (1.0, &[1, 1])],
    ),
    ("(d)", "[D4,D1] = 0", &[(1.0, &[3, 0]), (-1.0, &[0, 3])]),
    ("(e)", "[D4,D2] = 0", &[(1.0, &[3, 1]), (-1.0, &[1, 3])]),
    ("(f)", "[D4,D3] = 0", &[(1.0, &[3, 2]), (-1.0, &[2, 3])]),
    (
        "(g)",
        "D3^2 + D4^2 = D2 D1 D2",
        &[(1.0, &[2, 2]), (1.0, &[3, 3]), (-1.0, &[1, 0, 1])],
    ),
];

/// `[D1,D2] = -2 D3`, off by a sign.
const CONTROL: Words = &[(1.0, &[0, 1]), (-1.0, &[1, 0]), (2.0, &[2])];

fn compose(
    d: &[DifferentialOperator; 4],
    word: &[usize],
) -> jacobi_core::Result<DifferentialOperator> {
    let mut op = d[word[0]].clone();
    for &i in &word[1..] {
        op = op.compose(&d[i])?;
    }
    Ok(op)
}

/// `|Σ c_w (w f)(p)| / (1 + Σ |c_w (w f)(p)|)`.
fn entry(ctx: &Ctx, d: &[DifferentialOperator; 4], words: Words) -> super::Residuals {
    let ops = words
        .iter()
        .map(|(c, w)| compose(d, w).map(|op| (*c, op)))
        .collect::<jacobi_core::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    let space = Space::HalfPlane(RealChart::new(1, 1).expect("n = 1"));
    ctx.trials(|rng| {
        let f = random_test_function(&space.chart(), rng);
        let p = space.point(rng)?;
        let mut sum = C64::new(0.0, 0.0);
        let mut scale = 0.0;
        for (c, op) in &ops {
            let t = op.evaluate(&p, &f)? * *c;
            sum += t;
            scale += t.norm();
        }
        Ok::<f64, jacobi_core::Error>(sum.norm() / (1.0 + scale))
    })
}

pub(super) fn run(ctx: &Ctx) -> Vec<Entry> {
    let d = d_operators_11();
    let mut out: Vec<Entry> = RELATIONS
        .iter()
        .map(|(label, statement, words)| {
            Entry::check(*label, *statement, TOL, entry(ctx, &d, words))
        })
        .collect();
    out.push(Entry::control(
        "(a) sign flipped",
        "[D1,D2] = -2 D3 fails",
        CONTROL_THRESHOLD,
        entry(ctx, &d, CONTROL),
    ));
    out
}
