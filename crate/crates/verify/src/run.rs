use std::time::Instant;

use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::Result;
use crate::report::{Report, SuiteReport};
use crate::suites;

/// Runs the selected suites in parallel and assembles the report in the
/// configured suite order.
pub fn run(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let results: Vec<_> = cfg
        .suites
        .par_iter()
        .map(|&suite| {
            let start = Instant::now();
            let (entries, fits) = suites::run_suite(cfg, suite);
            let mut report = SuiteReport::new(suite.name(), suites::claim(suite), entries);
            if cfg.timings {
                report.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            (report, fits)
        })
        .collect();
    let mut reports = Vec::with_capacity(results.len());
    let mut fitted = Vec::new();
    for (r, f) in results {
        reports.push(r);
        fitted.extend(f);
    }
    Ok(Report::new(cfg.clone(), reports, fitted))
}
