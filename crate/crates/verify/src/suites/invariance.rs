use jacobi_core::chart::RealChart;
use jacobi_core::operators::*;
use jacobi_core::testfn::random_test_function;

use super::{built, unbuilt, Built, Ctx, Space, CONTROL_THRESHOLD};
use crate::report::{Entry, EntryKind};

pub(super) fn operators(space: Space, a: f64, b: f64) -> Vec<Built> {
    let mut ops = Vec::new();
    match space {
        Space::Siegel(n) => {
            ops.push(built(siegel_laplacian(a, n)));
            for j in 1..=n.min(2) {
                ops.push(built(maass_h(j, n)));
            }
        }
        Space::HalfPlane(chart) => {
            let m = chart.m();
            ops.push(Ok(op_m1(chart)));
            ops.push(Ok(op_m2(chart)));
            ops.push(built(jacobi_laplacian(a, b, chart)));
            ops.push(built(op_k(chart)));
            for k in 0..m {
                for l in 0..m {
                    ops.push(built(op_t_entry(chart, k, l)));
                }
            }
            ops.push(Ok(op_m3(chart)));
            for k in 0..m {
                for l in 0..m {
                    ops.push(built(op_p(chart, k, l)));
                }
            }
        }
        Space::Disk(chart) => {
            let m = chart.m();
            ops.push(Ok(disk_s1(chart)));
            ops.push(Ok(disk_s2(chart)));
            ops.push(built(disk_laplacian(a, b, chart)));
            ops.push(built(disk_k(chart)));
            for k in 0..m {
                for l in 0..m {
                    ops.push(built(disk_t_entry(chart, k, l)));
                }
            }
            ops.push(Ok(disk_s3(chart)));
            for k in 0..m {
                for l in 0..m {
                    ops.push(built(disk_q(chart, k, l)));
                }
            }
        }
    }
    ops
}

fn entry(ctx: &Ctx, kind: EntryKind, space: Space, op: &Built, tol: f64) -> Entry {
    let chart = space.chart();
    let claim = format!("D(f o g) = (Df) o g for random g in {}", space.group_name());
    match op {
        Ok(op) => {
            let res = ctx.trials(|rng| {
                let g = space.group_element(rng)?;
                let f = random_test_function(&chart, rng);
                let p = space.point(rng)?;
                invariance_residual(op, g.as_ref(), &f, &p)
            });
            Entry::new(kind, op.name(), claim, tol, res)
        }
        Err(e) => Entry::new(kind, "unbuilt", claim, tol, unbuilt(e)),
    }
}

pub(super) fn run(ctx: &Ctx) -> Vec<Entry> {
    let cfg = ctx.cfg;
    let chart = RealChart::new(cfg.n, cfg.m).expect("validated");
    let mut out = Vec::new();
    for space in [
        Space::Siegel(cfg.n),
        Space::HalfPlane(chart),
        Space::Disk(chart),
    ] {
        for op in operators(space, cfg.a, cfg.b) {
            out.push(entry(ctx, EntryKind::Check, space, &op, cfg.tol));
        }
    }
    // the printed second-order operators, kept for comparison
    let printed = [
        (Space::HalfPlane(chart), op_m2_printed(chart)),
        (Space::Disk(chart), disk_s2_printed(chart)),
    ];
    for (space, op) in printed {
        let e = entry(ctx, EntryKind::Info, space, &Ok(op), cfg.tol);
        out.push(e.with_detail("uncorrected V-term normalization; invariant only for n = 1"));
    }
    for space in [Space::HalfPlane(chart), Space::Disk(chart)] {
        let op = DifferentialOperator::partial(chart, space.model(), chart.x(0, 0));
        out.push(entry(
            ctx,
            EntryKind::Control,
            space,
            &built(op),
            CONTROL_THRESHOLD,
        ));
    }
    out
}
