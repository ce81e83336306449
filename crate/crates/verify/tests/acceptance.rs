//! One PASS/FAIL line per acceptance criterion.
//!
//! Criterion 6 fails: the symmetrization map sends φ and ψ to -D₃ and -D₄
//! rather than D₃ and D₄. The line reports the measured ratio. The process
//! exits nonzero only on an unexpected outcome, i.e. any other criterion
//! failing or criterion 6 failing for a different reason.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use jacobi_verify::{emit, run, EntryKind, Format, Report, RunConfig, Suite, SuiteReport};

fn config(suites: &[Suite], n: usize, m: usize, trials: usize) -> RunConfig {
    RunConfig {
        n,
        m,
        trials,
        suites: suites.to_vec(),
        ..RunConfig::default()
    }
}

fn timed(cfg: &RunConfig) -> (Report, Duration) {
    let start = Instant::now();
    let r = run(cfg).expect("valid config");
    (r, start.elapsed())
}

fn suite(r: &Report, s: Suite) -> &SuiteReport {
    r.suite(s.name()).expect("selected suite is reported")
}

/// Names of the entries that did not pass, or their count if there are many.
fn failures(s: &SuiteReport) -> String {
    let bad: Vec<&str> = s
        .entries
        .iter()
        .filter(|e| !e.passed)
        .map(|e| e.name.as_str())
        .collect();
    if bad.len() > 6 {
        format!("{} entries failed", bad.len())
    } else {
        bad.join(", ")
    }
}

fn checks_below(s: &SuiteReport, tol: f64) -> bool {
    s.entries
        .iter()
        .filter(|e| e.kind == EntryKind::Check)
        .all(|e| e.max_residual.is_some_and(|r| r <= tol))
}

fn controls_above(s: &SuiteReport, threshold: f64) -> bool {
    s.entries
        .iter()
        .filter(|e| e.kind == EntryKind::Control)
        .all(|e| e.min_residual.is_some_and(|r| r > threshold))
}

fn max_residual(suites: &[&SuiteReport]) -> f64 {
    suites
        .iter()
        .filter_map(|s| s.max_residual)
        .fold(0.0, f64::max)
}

struct Outcome {
    passed: bool,
    /// A failure documented as a property of the claim, not of the code.
    expected_failure: bool,
    summary: String,
}

fn outcome(passed: bool, summary: String) -> Outcome {
    Outcome {
        passed,
        expected_failure: false,
        summary,
    }
}

fn c1_weyl_relations() -> Outcome {
    let (r, t) = timed(&config(&[Suite::RelationsExact], 1, 1, 1));
    let s = suite(&r, Suite::RelationsExact);
    let labels = ["(a)", "(b)", "(c)", "(d)", "(e)", "(f)", "(g)"];
    let relations: Vec<_> = s
        .entries
        .iter()
        .filter(|e| labels.contains(&e.name.as_str()))
        .collect();
    let exact = relations.len() == 7
        && relations
            .iter()
            .all(|e| e.passed && e.max_residual == Some(0.0));
    outcome(
        exact && t < Duration::from_secs(5),
        format!(
            "{} of 7 relations hold exactly in {:.2} s",
            relations.iter().filter(|e| e.passed).count(),
            t.as_secs_f64()
        ),
    )
}

fn c2_polynomial_relations() -> Outcome {
    let (r, t) = timed(&config(&[Suite::RelationsExact], 1, 1, 1));
    let s = suite(&r, Suite::RelationsExact);
    let polys: Vec<_> = s
        .entries
        .iter()
        .filter(|e| e.name.starts_with("m="))
        .collect();
    let all_m = (1..=3).all(|m| polys.iter().any(|e| e.name.starts_with(&format!("m={m} "))));
    let exact = polys
        .iter()
        .all(|e| e.passed && e.max_residual == Some(0.0));
    outcome(
        all_m && exact && t < Duration::from_secs(5),
        format!(
            "{} identities for m = 1..3 vanish identically in {:.2} s",
            polys.len(),
            t.as_secs_f64()
        ),
    )
}

fn c3_invariance() -> Outcome {
    let start = Instant::now();
    let mut reports = Vec::new();
    let mut ok = true;
    let mut notes = Vec::new();
    for (n, m) in [(1, 1), (1, 2), (2, 1)] {
        let (r, _) = timed(&config(&[Suite::Invariance], n, m, 100));
        let s = suite(&r, Suite::Invariance).clone();
        let pass = s.passed && checks_below(&s, 1e-8) && controls_above(&s, 1e-3);
        let names: Vec<&str> = s.entries.iter().map(|e| e.name.as_str()).collect();
        let required = ["M1", "M2", "K", "M3", "S1", "S2", "K_D", "H_1"];
        let complete = required.iter().all(|r| names.contains(r))
            && (n < 2 || names.contains(&"H_2"))
            && names.iter().any(|x| x.starts_with("T_"))
            && names.iter().any(|x| x.starts_with("P_"))
            && names.iter().any(|x| x.starts_with("TD_"));
        if !(pass && complete) {
            notes.push(format!("({n},{m}): {}", failures(&s)));
        }
        ok &= pass && complete;
        reports.push(s);
    }
    let t = start.elapsed();
    let refs: Vec<&SuiteReport> = reports.iter().collect();
    outcome(
        ok && t < Duration::from_secs(600),
        format!(
            "max residual {:.2e} at (1,1), (1,2), (2,1), controls above 1e-3, {:.1} s{}",
            max_residual(&refs),
            t.as_secs_f64(),
            if notes.is_empty() {
                String::new()
            } else {
                format!("; {}", notes.join("; "))
            }
        ),
    )
}

fn c4_laplace_beltrami() -> Outcome {
    let mut reports = Vec::new();
    for (n, m) in [(1, 1), (1, 2), (2, 1)] {
        let (r, _) = timed(&config(&[Suite::Laplacian], n, m, 50));
        reports.push(suite(&r, Suite::Laplacian).clone());
    }
    let ok = reports.iter().all(|s| s.passed && checks_below(s, 1e-8));
    let refs: Vec<&SuiteReport> = reports.iter().collect();
    outcome(
        ok,
        format!(
            "max residual {:.2e} over 50 pairs per operator, two (A,B) settings",
            max_residual(&refs)
        ),
    )
}

fn c5_cayley() -> Outcome {
    let (r, _) = timed(&config(&[Suite::Cayley], 1, 1, 200));
    let s = suite(&r, Suite::Cayley);
    let get = |name: &str| s.entries.iter().find(|e| e.name == name);
    let base = get("Phi(0,0)").is_some_and(|e| e.passed && e.max_residual == Some(0.0));
    let compat = get("intertwining").is_some_and(|e| e.passed && e.trials == 200);
    let metric = get("metric pullback").is_some_and(|e| e.max_residual.is_some_and(|r| r < 1e-8));
    let r = |name: &str| get(name).and_then(|e| e.max_residual).unwrap_or(f64::NAN);
    outcome(
        base && compat && metric,
        format!(
            "Phi(0,0) exact, intertwining {:.2e} over 200 cases, metric pullback {:.2e}",
            r("intertwining"),
            r("metric pullback")
        ),
    )
}

fn c6_helgason() -> Outcome {
    let (r, _) = timed(&config(&[Suite::Helgason], 1, 1, 50));
    let s = suite(&r, Suite::Helgason);
    let c1 = r.fitted_constants.iter().find(|f| f.name == "c1");
    let c1_ok = c1.is_some_and(|f| f.residual.is_some_and(|x| x < 1e-7));
    let c1_value = c1.and_then(|f| f.re).unwrap_or(f64::NAN);
    let passed = s.passed && c1_ok && checks_below(s, 1e-7);

    let failing: Vec<_> = s.entries.iter().filter(|e| !e.passed).collect();
    let ratios: Vec<String> = failing
        .iter()
        .map(|e| {
            let ratio = e
                .detail
                .as_deref()
                .and_then(|d| d.strip_prefix("least-squares ratio "))
                .unwrap_or("?");
            format!("{} has ratio {ratio}", e.name)
        })
        .collect();
    let sign_only = failing.len() == 2
        && failing
            .iter()
            .all(|e| e.name == "Theta(phi)" || e.name == "Theta(psi)")
        && failing.iter().all(|e| {
            e.detail
                .as_deref()
                .is_some_and(|d| d.contains("ratio -1.000000000"))
        })
        && s.entries
            .iter()
            .filter(|e| e.name.ends_with(" sign"))
            .all(|e| e.max_residual.is_some_and(|r| r < 1e-7));
    Outcome {
        passed,
        expected_failure: !passed && sign_only && c1_ok,
        summary: if passed {
            format!("Theta matches on 50 samples, c1 = {c1_value:.9}")
        } else {
            format!(
                "c1 = {c1_value:.9}; q and xi match D1, D2 but {} (sign of the odd generators)",
                ratios.join(", ")
            )
        },
    }
}

fn c7_maass() -> Outcome {
    let (r, _) = timed(&config(&[Suite::Maass], 1, 1, 100));
    let s = suite(&r, Suite::Maass);
    let needed = ["-H_1 on H_1", "-H_1 on H_2", "H_1 on H_2"];
    let ok = needed.iter().all(|n| {
        s.entries
            .iter()
            .any(|e| e.name == *n && e.max_residual.is_some_and(|r| r < 1e-8))
    });
    outcome(
        ok && s.passed,
        format!("max residual {:.2e}", s.max_residual.unwrap_or(f64::NAN)),
    )
}

fn c8_eigenfunctions() -> Outcome {
    let (r, _) = timed(&config(&[Suite::Eigenfunctions], 1, 1, 100));
    let s = suite(&r, Suite::Eigenfunctions);
    let bessel = s
        .entries
        .iter()
        .filter(|e| e.name.starts_with("BesselWave"))
        .count();
    outcome(
        s.passed && bessel == 4,
        format!(
            "{} candidates, max residual {:.2e}{}",
            s.entries.len() - 2,
            s.max_residual.unwrap_or(f64::NAN),
            if s.passed {
                String::new()
            } else {
                format!("; {}", failures(s))
            }
        ),
    )
}

fn c9_polynomials() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for (n, m) in [(1, 1), (1, 3), (2, 2)] {
        let (r, _) = timed(&config(&[Suite::Polynomials], n, m, 100));
        let s = suite(&r, Suite::Polynomials);
        ok &= s.passed && checks_below(s, 1e-10);
        worst = worst.max(s.max_residual.unwrap_or(f64::INFINITY));
    }
    outcome(
        ok,
        format!("max residual {worst:.2e} over 100 unitary trials at (1,1), (1,3), (2,2)"),
    )
}

fn c10_determinism() -> Outcome {
    let cfg = config(
        &[
            Suite::Invariance,
            Suite::Helgason,
            Suite::Slash,
            Suite::Cayley,
        ],
        1,
        1,
        10,
    );
    let a = emit(&run(&cfg).expect("valid"), Format::Json);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(3)
        .build()
        .expect("thread pool");
    let b = pool.install(|| emit(&run(&cfg).expect("valid"), Format::Json));
    let other = RunConfig { seed: 2, ..cfg };
    let c = emit(&run(&other).expect("valid"), Format::Json);
    outcome(
        a == b && a != c,
        format!(
            "{} bytes identical across runs and thread counts; another seed differs",
            a.len()
        ),
    )
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("Weyl-algebra relations", c1_weyl_relations),
        ("polynomial relations", c2_polynomial_relations),
        ("operator invariance", c3_invariance),
        ("Laplace-Beltrami cross-check", c4_laplace_beltrami),
        ("partial Cayley transform", c5_cayley),
        ("symmetrization map", c6_helgason),
        ("Maass operators", c7_maass),
        ("eigenfunctions", c8_eigenfunctions),
        ("invariant polynomials", c9_polynomials),
        ("deterministic reports", c10_determinism),
    ];
    let mut unexpected = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        let note = if o.expected_failure {
            " [documented]"
        } else {
            ""
        };
        println!(
            "criterion {:>2} {verdict}{note}: {name}: {}",
            i + 1,
            o.summary
        );
        if !o.passed && !o.expected_failure {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria failed unexpectedly");
        ExitCode::FAILURE
    }
}
