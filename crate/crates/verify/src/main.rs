use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use jacobi_verify::{emit, run, Format, PartialConfig, Suite};

/// Verify the invariant-operator claims on the Siegel-Jacobi space.
///
/// Settings come from the flags, then the config file, then the defaults.
/// Exits with 0 iff every suite passes, 1 if one fails and 2 on bad input.
#[derive(Parser, Debug)]
#[command(name = "verify", version)]
struct Cli {
    /// Suite to run; repeat for several. Defaults to all.
    #[arg(long = "suite", value_enum)]
    suites: Vec<Suite>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long = "A")]
    a: Option<f64>,
    #[arg(long = "B")]
    b: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    jet_order: Option<usize>,
    /// Record wall times; the report is then no longer reproducible byte for byte.
    #[arg(long)]
    timings: bool,
    /// JSON config file.
    #[arg(long, env = "JACOBI_VERIFY_CONFIG")]
    config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Cli {
    fn overrides(&self) -> PartialConfig {
        PartialConfig {
            n: self.n,
            m: self.m,
            a: self.a,
            b: self.b,
            seed: self.seed,
            trials: self.trials,
            tol: self.tol,
            jet_order: self.jet_order,
            suites: (!self.suites.is_empty()).then(|| self.suites.clone()),
            timings: self.timings.then_some(true),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let file = match &cli.config {
        Some(path) => match PartialConfig::from_file(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        None => PartialConfig::default(),
    };
    let cfg = match cli.overrides().over(file).resolve() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = emit(&report, cli.format);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    if report.all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
