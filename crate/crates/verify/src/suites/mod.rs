//! The checks behind each suite. Every entry draws its samples from its own
//! RNG stream, so results do not depend on thread scheduling.

mod cayley;
mod eigen;
mod exact;
mod helgason;
mod invariance;
mod laplacian;
mod maass;
mod numeric;
mod polynomials;
mod slash;

use std::cell::Cell;
use std::fmt::Display;

use jacobi_core::chart::RealChart;
use jacobi_core::groups::ChartMap;
use jacobi_core::linalg::CMat;
use jacobi_core::operators::{DifferentialOperator, Model};
use jacobi_core::sample;
use jacobi_core::C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{RunConfig, Suite};
use crate::report::{Entry, FittedConstant};

/// Spread of the random group elements around the identity.
pub(crate) const GROUP_SCALE: f64 = 0.5;

/// Residual a deliberately wrong claim must exceed.
pub(crate) const CONTROL_THRESHOLD: f64 = 1e-3;

pub(crate) type Residuals = std::result::Result<Vec<f64>, String>;

/// The RNG for one trial of one entry of one suite.
pub fn trial_rng(seed: u64, suite: Suite, entry: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((suite as u64) << 56) | (entry << 40) | trial);
    rng
}

/// Per-suite state: the config and the next free entry stream.
pub(crate) struct Ctx<'a> {
    pub cfg: &'a RunConfig,
    suite: Suite,
    next: Cell<u64>,
}

impl<'a> Ctx<'a> {
    fn new(cfg: &'a RunConfig, suite: Suite) -> Self {
        Ctx {
            cfg,
            suite,
            next: Cell::new(0),
        }
    }

    /// Runs `f` once per trial in parallel, each on a fresh stream, and
    /// keeps the results in trial order.
    pub fn collect<T, F, E>(&self, trials: usize, f: F) -> std::result::Result<Vec<T>, String>
    where
        T: Send,
        F: Fn(&mut ChaCha8Rng) -> std::result::Result<T, E> + Sync,
        E: Display,
    {
        let entry = self.next.get();
        self.next.set(entry + 1);
        let (seed, suite) = (self.cfg.seed, self.suite);
        (0..trials as u64)
            .into_par_iter()
            .map(|t| f(&mut trial_rng(seed, suite, entry, t)).map_err(|e| e.to_string()))
            .collect()
    }

    pub fn sample<F, E>(&self, trials: usize, f: F) -> Residuals
    where
        F: Fn(&mut ChaCha8Rng) -> std::result::Result<f64, E> + Sync,
        E: Display,
    {
        self.collect(trials, f)
    }

    /// `sample` with the configured trial count.
    pub fn trials<F, E>(&self, f: F) -> Residuals
    where
        F: Fn(&mut ChaCha8Rng) -> std::result::Result<f64, E> + Sync,
        E: Display,
    {
        self.sample(self.cfg.trials, f)
    }
}

/// Where an operator lives, with the matching group and point samplers.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Space {
    /// `ℍ_n` with `Sp(n, ℝ)`.
    Siegel(usize),
    /// `ℍ_{n,m}` with `G^J`.
    HalfPlane(RealChart),
    /// `𝔻_{n,m}` with `G^J_*`.
    Disk(RealChart),
}

impl Space {
    pub fn chart(self) -> RealChart {
        match self {
            Space::Siegel(n) => RealChart::new(n, 0).expect("n >= 1"),
            Space::HalfPlane(c) | Space::Disk(c) => c,
        }
    }

    pub fn point(self, rng: &mut ChaCha8Rng) -> jacobi_core::Result<Vec<f64>> {
        let chart = self.chart();
        match self {
            Space::Siegel(n) => {
                let p = sample::random_siegel_point(n, rng)?;
                chart.pack(p.omega(), &CMat::complex_zeros(0, n))
            }
            Space::HalfPlane(c) => {
                let p = sample::random_siegel_jacobi_point(c.n(), c.m(), rng)?;
                chart.pack(p.omega(), p.z())
            }
            Space::Disk(c) => {
                let p = sample::random_disk_point(c.n(), c.m(), rng)?;
                chart.pack(p.w(), p.eta())
            }
        }
    }

    pub fn group_element(self, rng: &mut ChaCha8Rng) -> jacobi_core::Result<Box<dyn ChartMap>> {
        Ok(match self {
            Space::Siegel(n) => Box::new(sample::random_symplectic(n, rng, GROUP_SCALE)?),
            Space::HalfPlane(c) => Box::new(sample::random_jacobi(c.n(), c.m(), rng, GROUP_SCALE)?),
            Space::Disk(c) => Box::new(sample::random_star_jacobi(c.n(), c.m(), rng, GROUP_SCALE)?),
        })
    }

    pub fn model(self) -> Model {
        match self {
            Space::Disk(_) => Model::Disk,
            _ => Model::HalfPlane,
        }
    }

    pub fn group_name(self) -> &'static str {
        match self {
            Space::Siegel(_) => "Sp(n,R)",
            Space::HalfPlane(_) => "G^J",
            Space::Disk(_) => "G^J_*",
        }
    }
}

pub(crate) fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / (1.0 + b.norm())
}

/// An operator, or the error that prevented building it.
pub(crate) type Built = std::result::Result<DifferentialOperator, String>;

pub(crate) fn built(r: jacobi_core::Result<DifferentialOperator>) -> Built {
    r.map_err(|e| e.to_string())
}

/// `Residuals` for an operator that could not be built.
pub(crate) fn unbuilt(e: &str) -> Residuals {
    Err(format!("operator not built: {e}"))
}

/// Runs one suite: its entries and any constants it fits.
pub fn run_suite(cfg: &RunConfig, suite: Suite) -> (Vec<Entry>, Vec<FittedConstant>) {
    let ctx = Ctx::new(cfg, suite);
    match suite {
        Suite::Invariance => (invariance::run(&ctx), vec![]),
        Suite::RelationsExact => (exact::run(), vec![]),
        Suite::RelationsNumeric => (numeric::run(&ctx), vec![]),
        Suite::Cayley => (cayley::run(&ctx), vec![]),
        Suite::Laplacian => (laplacian::run(&ctx), vec![]),
        Suite::Helgason => helgason::run(&ctx),
        Suite::Eigenfunctions => (eigen::run(&ctx), vec![]),
        Suite::Slash => (slash::run(&ctx), vec![]),
        Suite::Polynomials => (polynomials::run(&ctx), vec![]),
        Suite::Maass => (maass::run(&ctx), vec![]),
    }
}

/// One line describing what a suite establishes.
pub fn claim(suite: Suite) -> &'static str {
    match suite {
        Suite::Invariance => "the invariant operators commute with the group actions",
        Suite::RelationsExact => {
            "identities among D1..D4 and among the invariant polynomials, in exact arithmetic"
        }
        Suite::RelationsNumeric => "the same operator identities for the jet-evaluated D1..D4",
        Suite::Cayley => "the partial Cayley transform intertwines actions, metrics and operators",
        Suite::Laplacian => "the Laplacians are the Laplace-Beltrami operators of their metrics",
        Suite::Helgason => {
            "the symmetrization map sends invariant polynomials to the expected operators"
        }
        Suite::Eigenfunctions => "the listed functions are eigenfunctions of Delta_{1,1;1,1}",
        Suite::Slash => "invariant operators commute with the slash action",
        Suite::Polynomials => "the generators and extra invariants are U(n)-invariant",
        Suite::Maass => "-H_1 is the Laplacian on H_n and the Maass operators are invariant",
    }
}
