use std::f64::consts::{E, FRAC_PI_2};

use jacobi_core::maassjacobi::{bessel_k, eigen_check, EigenCandidate, EigenTag};
use jacobi_core::C64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Ctx, CONTROL_THRESHOLD};
use crate::report::Entry;

/// Tolerance for the Bessel wave, whose values come from quadrature.
const BESSEL_TOL: f64 = 1e-6;
/// Tolerance for the closed form of `K_{1/2}`.
const HALF_ORDER_TOL: f64 = 1e-10;

fn point(rng: &mut ChaCha8Rng) -> [f64; 4] {
    [
        rng.random_range(-1.0..1.0),
        rng.random_range(0.5..2.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    ]
}

fn label(s: C64) -> String {
    if s.im == 0.0 {
        format!("{}", s.re)
    } else {
        format!("{}{:+}i", s.re, s.im)
    }
}

fn check(ctx: &Ctx, c: &EigenCandidate, tol: f64, name: String, claim: String) -> Entry {
    let res = ctx.trials(|rng| eigen_check(c, &[point(rng)]));
    Entry::check(name, claim, tol, res)
}

pub(super) fn run(ctx: &Ctx) -> Vec<Entry> {
    let mut out = Vec::new();
    let exponents = [C64::new(2.0, 0.0), C64::new(0.5, 3.0)];
    for tag in EigenTag::ALL {
        let ss: &[C64] = if tag.uses_s() {
            &exponents
        } else {
            &exponents[..1]
        };
        for &s in ss {
            let freqs: &[f64] = if tag == EigenTag::BesselWave {
                &[1.0, -2.0]
            } else {
                &[1.0]
            };
            for &a in freqs {
                let c = match EigenCandidate::new(tag, s, a) {
                    Ok(c) => c,
                    Err(e) => {
                        out.push(Entry::check(
                            format!("{tag:?}"),
                            "",
                            ctx.cfg.tol,
                            Err(e.to_string()),
                        ));
                        continue;
                    }
                };
                let mut name = format!("{tag:?}");
                if tag.uses_s() {
                    name += &format!(" s={}", label(s));
                }
                if tag == EigenTag::BesselWave {
                    name += &format!(" a={a}");
                }
                let tol = if tag == EigenTag::BesselWave {
                    BESSEL_TOL
                } else {
                    ctx.cfg.tol
                };
                let claim = format!("Delta f = {} f", label(c.claimed));
                out.push(check(ctx, &c, tol, name, claim));
            }
        }
    }

    let k = bessel_k(C64::new(0.5, 0.0), 1.0)
        .map(|k| vec![(k - C64::new(FRAC_PI_2.sqrt() / E, 0.0)).norm()])
        .map_err(|e| e.to_string());
    out.push(Entry::check(
        "K_1/2(1)",
        "K_{1/2}(1) = sqrt(pi/2) e^-1",
        HALF_ORDER_TOL,
        k,
    ));

    // y^s is not an eigenfunction for s(s+1)
    let s = exponents[0];
    let control = EigenCandidate::new(EigenTag::Ys, s, 1.0).map(|c| EigenCandidate {
        claimed: s * (s + 1.0),
        ..c
    });
    let res = match control {
        Ok(c) => ctx.trials(|rng| eigen_check(&c, &[point(rng)])),
        Err(e) => Err(e.to_string()),
    };
    out.push(Entry::control(
        "Ys wrong eigenvalue",
        "Delta y^s = s(s+1) y^s fails",
        CONTROL_THRESHOLD,
        res,
    ));
    out
}
