use std::fmt;
use std::path::Path;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A named group of checks. Declaration order is report order.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, ValueEnum,
)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Invariance,
    RelationsExact,
    RelationsNumeric,
    Cayley,
    Laplacian,
    Helgason,
    Eigenfunctions,
    Slash,
    Polynomials,
    Maass,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Invariance,
        Suite::RelationsExact,
        Suite::RelationsNumeric,
        Suite::Cayley,
        Suite::Laplacian,
        Suite::Helgason,
        Suite::Eigenfunctions,
        Suite::Slash,
        Suite::Polynomials,
        Suite::Maass,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Invariance => "invariance",
            Suite::RelationsExact => "relations-exact",
            Suite::RelationsNumeric => "relations-numeric",
            Suite::Cayley => "cayley",
            Suite::Laplacian => "laplacian",
            Suite::Helgason => "helgason",
            Suite::Eigenfunctions => "eigenfunctions",
            Suite::Slash => "slash",
            Suite::Polynomials => "polynomials",
            Suite::Maass => "maass",
        }
    }

    /// Highest derivative order any operator of the suite is evaluated at,
    /// including compositions.
    pub fn required_jet_order(self, n: usize) -> usize {
        match self {
            // P_kl and Q_kl have order 2n + 2; H₂ has order 4
            Suite::Invariance | Suite::Cayley => (2 * n + 2).max(4),
            // D₃², D₄² and D₂D₁D₂
            Suite::RelationsNumeric => 6,
            // Θ(φ), Θ(ψ) have order 3; the exploratory Θ(q₁) on ℍ₂ has order 4
            Suite::Helgason | Suite::Maass => 4,
            Suite::Laplacian | Suite::Eigenfunctions | Suite::Slash => 2,
            Suite::RelationsExact | Suite::Polynomials => 0,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Everything a run depends on. Two runs with equal configs produce
/// byte-identical JSON reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub n: usize,
    pub m: usize,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub seed: u64,
    pub trials: usize,
    pub tol: f64,
    pub jet_order: usize,
    pub suites: Vec<Suite>,
    /// Wall times make the report nondeterministic, so they are opt-in.
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: 1,
            m: 1,
            a: 1.0,
            b: 1.0,
            seed: 1,
            trials: 100,
            tol: 1e-8,
            jet_order: 6,
            suites: Suite::ALL.to_vec(),
            timings: false,
        }
    }
}

/// A config with every field optional: the shape of the config file and of
/// the command line overrides.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub n: Option<usize>,
    pub m: Option<usize>,
    #[serde(rename = "A")]
    pub a: Option<f64>,
    #[serde(rename = "B")]
    pub b: Option<f64>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub tol: Option<f64>,
    pub jet_order: Option<usize>,
    pub suites: Option<Vec<Suite>>,
    pub timings: Option<bool>,
}

impl PartialConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::ConfigFile(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::ConfigFile(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Fields set in `self` win over those in `base`.
    pub fn over(self, base: PartialConfig) -> PartialConfig {
        PartialConfig {
            n: self.n.or(base.n),
            m: self.m.or(base.m),
            a: self.a.or(base.a),
            b: self.b.or(base.b),
            seed: self.seed.or(base.seed),
            trials: self.trials.or(base.trials),
            tol: self.tol.or(base.tol),
            jet_order: self.jet_order.or(base.jet_order),
            suites: self.suites.or(base.suites),
            timings: self.timings.or(base.timings),
        }
    }

    /// Fills the gaps from the defaults and validates.
    pub fn resolve(self) -> Result<RunConfig> {
        let d = RunConfig::default();
        let cfg = RunConfig {
            n: self.n.unwrap_or(d.n),
            m: self.m.unwrap_or(d.m),
            a: self.a.unwrap_or(d.a),
            b: self.b.unwrap_or(d.b),
            seed: self.seed.unwrap_or(d.seed),
            trials: self.trials.unwrap_or(d.trials),
            tol: self.tol.unwrap_or(d.tol),
            jet_order: self.jet_order.unwrap_or(d.jet_order),
            suites: self.suites.unwrap_or(d.suites),
            timings: self.timings.unwrap_or(d.timings),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// One rejected field and why.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldError {
    pub field: &'static str,
    pub message: String,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

/// Charts beyond this size are slow enough that they are refused rather
/// than left to run for hours.
pub const MAX_DIM: usize = 3;

impl RunConfig {
    /// Every problem at once, in field order.
    pub fn validate(&self) -> Result<()> {
        let mut errs = Vec::new();
        let mut bad = |field, message: String| errs.push(FieldError { field, message });
        for (field, v) in [("n", self.n), ("m", self.m)] {
            if v == 0 {
                bad(field, "must be a positive integer".into());
            } else if v > MAX_DIM {
                bad(field, format!("must be at most {MAX_DIM}, got {v}"));
            }
        }
        for (field, v) in [("A", self.a), ("B", self.b)] {
            if !(v.is_finite() && v > 0.0) {
                bad(field, format!("must be a positive real, got {v}"));
            }
        }
        if self.trials == 0 {
            bad("trials", "must be at least 1".into());
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            bad("tol", format!("must be a positive real, got {}", self.tol));
        }
        let need = self
            .suites
            .iter()
            .map(|s| s.required_jet_order(self.n))
            .max()
            .unwrap_or(0)
            .max(2);
        if self.jet_order < need {
            let which: Vec<&str> = self
                .suites
                .iter()
                .filter(|s| s.required_jet_order(self.n) > self.jet_order)
                .map(|s| s.name())
                .collect();
            let which = if which.is_empty() {
                String::new()
            } else {
                format!(" for {}", which.join(", "))
            };
            bad(
                "jet_order",
                format!("must be at least {need}{which}, got {}", self.jet_order),
            );
        }
        let mut seen = std::collections::BTreeSet::new();
        for s in &self.suites {
            if !seen.insert(*s) {
                bad("suites", format!("{s} is listed twice"));
            }
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(errs))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        RunConfig::default().validate().unwrap();
    }

    #[test]
    fn zero_trials_names_the_field() {
        let err = PartialConfig {
            trials: Some(0),
            ..Default::default()
        }
        .resolve()
        .unwrap_err();
        match err {
            Error::Config(fields) => {
                assert_eq!(fields.len(), 1);
                assert_eq!(fields[0].field, "trials");
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn jet_order_is_checked_against_the_suites() {
        let low = PartialConfig {
            jet_order: Some(4),
            suites: Some(vec![Suite::RelationsNumeric]),
            ..Default::default()
        };
        assert!(low.clone().resolve().is_err());
        let ok = PartialConfig {
            suites: Some(vec![Suite::Laplacian]),
            ..low
        };
        assert!(ok.resolve().is_ok());
    }

    #[test]
    fn flags_override_file() {
        let file = PartialConfig::from_json(r#"{"n": 2, "seed": 9, "A": 3.0}"#).unwrap();
        let flags = PartialConfig {
            seed: Some(4),
            ..Default::default()
        };
        let cfg = flags.over(file).resolve().unwrap();
        assert_eq!((cfg.n, cfg.seed, cfg.a, cfg.m), (2, 4, 3.0, 1));
    }

    #[test]
    fn unknown_file_fields_are_rejected() {
        assert!(PartialConfig::from_json(r#"{"trails": 3}"#).is_err());
    }
}
