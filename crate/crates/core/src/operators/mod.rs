//! Invariant differential operators evaluated through jets.
//!
//! An operator of order `r` maps a jet of `f` of order `k >= r` at a point to
//! the jet of `Df` of order `k - r` at the same point. Coefficients are jets
//! of the coordinates, so compositions and commutators are exact up to
//! roundoff with no finite differences involved.
//!
//! Matrix-valued operators follow the usual conventions for such
//! expressions: in a product `(AB)_ij = Σ_k A_ik ∘ B_kj` each entry of the
//! left factor acts on the result of the right factor, coefficient matrices
//! multiply from the left, and a transpose only permutes entries.

mod algebra;
mod disk;
mod frame;
mod harness;
mod jacobi;
mod siegel;

pub use algebra::{CoefMatrix, Op, OpMatrix};
pub use disk::{
    disk_k, disk_laplacian, disk_q, disk_s1, disk_s2, disk_s2_printed, disk_s3, disk_t,
    disk_t_entry,
};
pub use frame::{Frame, Model};
pub use harness::{invariance_residual, transfer_residual, DiskTransfer};
pub use jacobi::{
    d_operators_11, jacobi_laplacian, op_k, op_m1, op_m2, op_m2_printed, op_m3, op_p, op_t,
    op_t_entry,
};
pub use siegel::{maass_h, siegel_laplacian, siegel_trace_form};

use num_complex::Complex64 as C64;

use crate::chart::RealChart;
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::testfn::ChartFunction;

/// A scalar differential operator on a chart of ℍ_{n,m} or 𝔻_{n,m}.
#[derive(Clone)]
pub struct DifferentialOperator {
    name: String,
    chart: RealChart,
    model: Model,
    op: Op,
}

impl std::fmt::Debug for DifferentialOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "DifferentialOperator({}, order {}, n={}, m={}, {:?})",
            self.name,
            self.order(),
            self.chart.n(),
            self.chart.m(),
            self.model
        )
    }
}

impl DifferentialOperator {
    pub fn new(name: impl Into<String>, chart: RealChart, model: Model, op: Op) -> Self {
        DifferentialOperator {
            name: name.into(),
            chart,
            model,
            op,
        }
    }

    pub fn identity(chart: RealChart, model: Model) -> Self {
        DifferentialOperator::new("I", chart, model, Op::identity())
    }

    /// `∂/∂(chart coordinate idx)`; not invariant, used as a negative control.
    pub fn partial(chart: RealChart, model: Model, idx: usize) -> Result<Self> {
        if idx >= chart.dim() {
            return Err(Error::Invalid(format!("coordinate {idx} out of range")));
        }
        Ok(DifferentialOperator::new(
            format!("d/d{}", chart.label(idx)),
            chart,
            model,
            Op::partial(idx),
        ))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.op.order()
    }

    pub fn chart(&self) -> RealChart {
        self.chart
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn op(&self) -> &Op {
        &self.op
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Applies the operator to a jet of `f` expanded at the frame's point.
    pub fn apply(&self, frame: &Frame, f: &Jet) -> Result<Jet> {
        if frame.chart() != self.chart || frame.model() != self.model {
            return Err(Error::Shape(format!(
                "{} evaluated on a foreign frame",
                self.name
            )));
        }
        self.op.apply(frame, f)
    }

    /// `(Df)(point)` using jets of exactly the operator's order.
    pub fn evaluate(&self, point: &[f64], f: &dyn ChartFunction) -> Result<C64> {
        Ok(self.apply_at(point, f, 0)?.value())
    }

    /// Jet of `Df` of order `extra` at `point`.
    pub fn apply_at(&self, point: &[f64], f: &dyn ChartFunction, extra: usize) -> Result<Jet> {
        let frame = Frame::new(self.chart, self.model, point, self.order() + extra)?;
        let fj = f.jet(frame.coords())?;
        self.apply(&frame, &fj)
    }

    fn check_compatible(&self, o: &Self) -> Result<()> {
        if self.chart != o.chart || self.model != o.model {
            return Err(Error::Shape(format!(
                "{} and {} live on different spaces",
                self.name, o.name
            )));
        }
        Ok(())
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        Ok(DifferentialOperator::new(
            format!("({})({})", self.name, o.name),
            self.chart,
            self.model,
            self.op.compose(&o.op),
        ))
    }

    /// `self ∘ o - o ∘ self`.
    pub fn commutator(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        Ok(DifferentialOperator::new(
            format!("[{}, {}]", self.name, o.name),
            self.chart,
            self.model,
            self.op.compose(&o.op).sub(&o.op.compose(&self.op)),
        ))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        Ok(DifferentialOperator::new(
            format!("{} + {}", self.name, o.name),
            self.chart,
            self.model,
            self.op.add(&o.op),
        ))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        Ok(DifferentialOperator::new(
            format!("{} - {}", self.name, o.name),
            self.chart,
            self.model,
            self.op.sub(&o.op),
        ))
    }

    pub fn scale(&self, c: C64) -> Self {
        DifferentialOperator::new(
            format!("({c})·{}", self.name),
            self.chart,
            self.model,
            self.op.scale(c),
        )
    }
}

/// Matrix of scalar operators sharing a chart.
#[derive(Clone, Debug)]
pub struct MatrixDifferentialOperator {
    rows: usize,
    cols: usize,
    entries: Vec<DifferentialOperator>,
}

impl MatrixDifferentialOperator {
    pub fn new(rows: usize, cols: usize, entries: Vec<DifferentialOperator>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for {rows}x{cols}",
                entries.len()
            )));
        }
        Ok(MatrixDifferentialOperator {
            rows,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &DifferentialOperator {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[DifferentialOperator] {
        &self.entries
    }

    /// Largest entry order.
    pub fn order(&self) -> usize {
        self.entries.iter().map(|e| e.order()).max().unwrap_or(0)
    }
}
