use std::fmt::Write as _;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{Error, Result};

/// Bumped on any incompatible change to the JSON layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryKind {
    /// Passes iff every residual is at most `tolerance`.
    Check,
    /// A deliberately wrong claim; passes iff every residual exceeds `tolerance`.
    Control,
    /// Reported for reference, never fails.
    Info,
}

/// One claim checked over `trials` random samples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub name: String,
    pub claim: String,
    pub kind: EntryKind,
    pub trials: usize,
    /// `None` when a trial raised an error, see `detail`.
    pub max_residual: Option<f64>,
    pub min_residual: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Entry {
    /// Builds an entry from per-trial residuals, or the first error raised.
    pub fn new(
        kind: EntryKind,
        name: impl Into<String>,
        claim: impl Into<String>,
        tolerance: f64,
        residuals: std::result::Result<Vec<f64>, String>,
    ) -> Entry {
        let (trials, max, min, detail) = match residuals {
            Ok(r) if r.iter().all(|x| x.is_finite()) => {
                let max = r
                    .iter()
                    .copied()
                    .fold(None, |a: Option<f64>, x| Some(a.map_or(x, |a| a.max(x))));
                let min = r
                    .iter()
                    .copied()
                    .fold(None, |a: Option<f64>, x| Some(a.map_or(x, |a| a.min(x))));
                (r.len(), max, min, None)
            }
            Ok(r) => (r.len(), None, None, Some("non-finite residual".to_string())),
            Err(e) => (0, None, None, Some(e)),
        };
        let passed = match (kind, max, min) {
            (EntryKind::Info, ..) => true,
            (EntryKind::Check, Some(max), _) => max <= tolerance,
            (EntryKind::Control, _, Some(min)) => min > tolerance,
            _ => false,
        };
        Entry {
            name: name.into(),
            claim: claim.into(),
            kind,
            trials,
            max_residual: max,
            min_residual: min,
            tolerance,
            passed,
            detail,
        }
    }

    pub fn check(
        name: impl Into<String>,
        claim: impl Into<String>,
        tolerance: f64,
        residuals: std::result::Result<Vec<f64>, String>,
    ) -> Entry {
        Entry::new(EntryKind::Check, name, claim, tolerance, residuals)
    }

    pub fn control(
        name: impl Into<String>,
        claim: impl Into<String>,
        threshold: f64,
        residuals: std::result::Result<Vec<f64>, String>,
    ) -> Entry {
        Entry::new(EntryKind::Control, name, claim, threshold, residuals)
    }

    pub fn info(
        name: impl Into<String>,
        claim: impl Into<String>,
        residuals: std::result::Result<Vec<f64>, String>,
    ) -> Entry {
        Entry::new(EntryKind::Info, name, claim, 0.0, residuals)
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Entry {
        let d = detail.into();
        self.detail = Some(match self.detail.take() {
            Some(prev) => format!("{prev}; {d}"),
            None => d,
        });
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub claim: String,
    /// Samples across all entries.
    pub trials: usize,
    /// Largest residual over the check entries.
    pub max_residual: Option<f64>,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
    pub entries: Vec<Entry>,
}

impl SuiteReport {
    pub fn new(name: &str, claim: &str, entries: Vec<Entry>) -> SuiteReport {
        let checks = entries.iter().filter(|e| e.kind == EntryKind::Check);
        let max_residual = checks
            .clone()
            .map(|e| e.max_residual)
            .try_fold(None, |acc: Option<f64>, r| {
                r.map(|r| Some(acc.map_or(r, |a| a.max(r))))
            })
            .flatten();
        SuiteReport {
            name: name.into(),
            claim: claim.into(),
            trials: entries.iter().map(|e| e.trials).sum(),
            max_residual,
            passed: entries.iter().all(|e| e.passed),
            wall_time_ms: None,
            entries,
        }
    }
}

/// A constant obtained by least squares, with the worst relative misfit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FittedConstant {
    pub name: String,
    pub claim: String,
    pub re: Option<f64>,
    pub im: Option<f64>,
    pub residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Versions {
    pub jacobi_verify: String,
    pub jacobi_core: String,
    pub jacobi_weyl: String,
}

impl Versions {
    pub fn current() -> Versions {
        Versions {
            jacobi_verify: env!("CARGO_PKG_VERSION").into(),
            jacobi_core: jacobi_core::VERSION.into(),
            jacobi_weyl: jacobi_weyl::VERSION.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub versions: Versions,
    pub config: RunConfig,
    pub suites: Vec<SuiteReport>,
    pub fitted_constants: Vec<FittedConstant>,
    pub all_passed: bool,
}

impl Report {
    pub fn new(
        config: RunConfig,
        suites: Vec<SuiteReport>,
        fitted_constants: Vec<FittedConstant>,
    ) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            versions: Versions::current(),
            all_passed: suites.iter().all(|s| s.passed),
            config,
            suites,
            fitted_constants,
        }
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.name == name)
    }

    pub fn parse(json: &str) -> Result<Report> {
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report is plain data");
            s.push('\n');
            s
        }
        Format::Csv => csv(report),
        Format::Text => text(report),
    }
}

fn num(x: Option<f64>) -> String {
    x.map_or_else(String::new, |x| format!("{x:e}"))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Header plus one row per suite.
fn csv(report: &Report) -> String {
    let mut out = String::from("suite,claim,trials,max_residual,passed,wall_time_ms\n");
    for s in &report.suites {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            csv_field(&s.name),
            csv_field(&s.claim),
            s.trials,
            num(s.max_residual),
            s.passed,
            s.wall_time_ms
                .map_or_else(String::new, |t| format!("{t:.1}")),
        );
    }
    out
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn text(report: &Report) -> String {
    let c = &report.config;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "verify {} (n={}, m={}, A={}, B={}, seed={}, trials={}, tol={:e})",
        report.versions.jacobi_verify, c.n, c.m, c.a, c.b, c.seed, c.trials, c.tol
    );
    for s in &report.suites {
        let time = s
            .wall_time_ms
            .map_or_else(String::new, |t| format!(" in {t:.0} ms"));
        let _ = writeln!(
            out,
            "\n[{}] {}: {} ({} samples, max residual {}){time}",
            verdict(s.passed),
            s.name,
            s.claim,
            s.trials,
            s.max_residual.map_or("n/a".into(), |r| format!("{r:.3e}")),
        );
        for e in &s.entries {
            let tag = match e.kind {
                EntryKind::Check => verdict(e.passed).to_string(),
                EntryKind::Control => format!("{} control", verdict(e.passed)),
                EntryKind::Info => "info".to_string(),
            };
            let range = match (e.min_residual, e.max_residual) {
                (Some(lo), Some(_)) if e.kind == EntryKind::Control => {
                    format!("min {lo:.3e} > {:.0e}", e.tolerance)
                }
                (_, Some(hi)) if e.kind == EntryKind::Check => {
                    format!("max {hi:.3e} <= {:.0e}", e.tolerance)
                }
                (_, Some(hi)) => format!("max {hi:.3e}"),
                _ => "no residual".into(),
            };
            let _ = writeln!(out, "  {tag:<12} {:<24} {range}", e.name);
            let _ = writeln!(out, "               {}", e.claim);
            if let Some(d) = &e.detail {
                for line in d.lines() {
                    let _ = writeln!(out, "               {line}");
                }
            }
        }
    }
    if !report.fitted_constants.is_empty() {
        let _ = writeln!(out, "\nfitted constants");
        for f in &report.fitted_constants {
            let value = match (f.re, f.im) {
                (Some(re), Some(im)) => format!("{re:.10} {im:+.3e}i"),
                _ => "n/a".into(),
            };
            let _ = writeln!(
                out,
                "  {} = {value} (misfit {})  {}",
                f.name,
                f.residual.map_or("n/a".into(), |r| format!("{r:.3e}")),
                f.claim
            );
            if let Some(d) = &f.detail {
                let _ = writeln!(out, "      {d}");
            }
        }
    }
    let _ = writeln!(out, "\n{}", verdict(report.all_passed));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let entries = vec![
            Entry::check("a", "x = x", 1e-8, Ok(vec![1e-16, 3e-15])),
            Entry::control("b", "x = y", 1e-3, Ok(vec![0.5, 0.2])),
            Entry::info("c", "z", Err("boom".into())),
        ];
        let s = SuiteReport::new("demo", "demo claims", entries);
        Report::new(RunConfig::default(), vec![s], vec![])
    }

    #[test]
    fn entry_verdicts() {
        let r = sample();
        let s = &r.suites[0];
        assert!(s.entries.iter().all(|e| e.passed));
        assert_eq!(s.max_residual, Some(3e-15));
        assert_eq!(s.trials, 4);
        let failed = Entry::check("d", "", 1e-8, Err("x".into()));
        assert!(!failed.passed);
        let control = Entry::control("e", "", 1e-3, Ok(vec![1.0, 1e-9]));
        assert!(!control.passed);
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        assert_eq!(Report::parse(&emit(&r, Format::Json)).unwrap(), r);
    }

    #[test]
    fn empty_report_still_echoes_config() {
        let r = Report::new(RunConfig::default(), vec![], vec![]);
        let json = emit(&r, Format::Json);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["config"]["trials"], 100);
        assert_eq!(v["suites"].as_array().unwrap().len(), 0);
        assert!(r.all_passed);
    }

    #[test]
    fn csv_has_a_row_per_suite() {
        let r = sample();
        assert_eq!(emit(&r, Format::Csv).lines().count(), r.suites.len() + 1);
    }
}
