use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::chart::RealChart;
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::linalg::{CMat, Mat};

/// Which realization the chart coordinates describe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    /// `(Ω, Z) ∈ ℍ_{n,m}`.
    HalfPlane,
    /// `(W, η) ∈ 𝔻_{n,m}`.
    Disk,
}

/// Coordinate jets at a point, with memoized coefficient matrices.
pub struct Frame {
    chart: RealChart,
    model: Model,
    point: Vec<f64>,
    coords: Vec<Jet>,
    memo: RefCell<HashMap<String, Rc<Mat<Jet>>>>,
}

impl Frame {
    /// Validates that `point` lies in the domain of `model`.
    pub fn new(chart: RealChart, model: Model, point: &[f64], order: usize) -> Result<Frame> {
        let (a, _) = chart.unpack(point)?;
        match model {
            Model::HalfPlane => {
                if !a.imag_part().is_positive_definite() {
                    return Err(Error::Domain("Im Ω is not positive definite".into()));
                }
            }
            Model::Disk => {
                let n = chart.n();
                let gap = CMat::complex_identity(n).sub(&a.conj().mul(&a));
                if !gap.is_positive_definite_hermitian() {
                    return Err(Error::Domain("I - W̄W is not positive definite".into()));
                }
            }
        }
        Ok(Frame {
            chart,
            model,
            point: point.to_vec(),
            coords: Jet::coordinates(point, order),
            memo: RefCell::new(HashMap::new()),
        })
    }

    pub fn chart(&self) -> RealChart {
        self.chart
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn point(&self) -> &[f64] {
        &self.point
    }

    pub fn order(&self) -> usize {
        self.coords[0].order()
    }

    pub fn coords(&self) -> &[Jet] {
        &self.coords
    }

    /// Memoized coefficient matrix; `key` must identify `build` uniquely.
    pub fn memo(
        &self,
        key: &str,
        build: &dyn Fn(&Frame) -> Result<Mat<Jet>>,
    ) -> Result<Rc<Mat<Jet>>> {
        if let Some(m) = self.memo.borrow().get(key) {
            return Ok(m.clone());
        }
        let m = Rc::new(build(self)?);
        self.memo.borrow_mut().insert(key.to_string(), m.clone());
        Ok(m)
    }

    /// `Ω` (or `W`) as a jet matrix.
    pub fn sym(&self) -> Result<Rc<Mat<Jet>>> {
        self.memo("sym", &|fr| Ok(fr.chart.unpack_generic(&fr.coords)?.0))
    }

    /// `Z` (or `η`) as a jet matrix.
    pub fn rect(&self) -> Result<Rc<Mat<Jet>>> {
        self.memo("rect", &|fr| Ok(fr.chart.unpack_generic(&fr.coords)?.1))
    }
}
