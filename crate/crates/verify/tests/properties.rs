use jacobi_verify::{emit, Entry, EntryKind, Format, Report, RunConfig, Suite, SuiteReport};
use proptest::prelude::*;

fn kind() -> impl Strategy<Value = EntryKind> {
    prop_oneof![
        Just(EntryKind::Check),
        Just(EntryKind::Control),
        Just(EntryKind::Info)
    ]
}

fn entry() -> impl Strategy<Value = Entry> {
    (
        kind(),
        "[a-zA-Z0-9_ ,\"{}()^-]{0,12}",
        prop::collection::vec(-1e300f64..1e300, 0..5),
        any::<bool>(),
    )
        .prop_map(|(k, name, residuals, errs)| {
            let r = if errs {
                Err(format!("{name} failed"))
            } else {
                Ok(residuals)
            };
            Entry::new(k, name.clone(), name, 1e-8, r)
        })
}

fn report() -> impl Strategy<Value = Report> {
    (
        prop::collection::vec(prop::collection::vec(entry(), 0..4), 0..4),
        any::<u64>(),
        1e-300f64..1.0,
    )
        .prop_map(|(suites, seed, tol)| {
            let suites: Vec<SuiteReport> = suites
                .into_iter()
                .enumerate()
                .map(|(i, e)| SuiteReport::new(Suite::ALL[i].name(), "claim, \"quoted\"", e))
                .collect();
            let cfg = RunConfig {
                seed,
                tol,
                ..RunConfig::default()
            };
            Report::new(cfg, suites, vec![])
        })
}

proptest! {
    #[test]
    fn json_round_trips(r in report()) {
        prop_assert_eq!(Report::parse(&emit(&r, Format::Json)).unwrap(), r);
    }

    #[test]
    fn csv_rows_match_suites(r in report()) {
        let csv = emit(&r, Format::Csv);
        let rows = csv.lines().count();
        prop_assert_eq!(rows, r.suites.len() + 1);
    }

    #[test]
    fn report_passes_iff_every_suite_does(r in report()) {
        prop_assert_eq!(r.all_passed, r.suites.iter().all(|s| s.passed));
        for s in &r.suites {
            prop_assert_eq!(s.passed, s.entries.iter().all(|e| e.passed));
        }
    }
}
