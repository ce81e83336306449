use num_complex::Complex64 as C64;

use super::frame::Model;
use super::DifferentialOperator;
use crate::error::{Error, Result};
use crate::groups::{ChartMap, InverseCayleyMap};
use crate::testfn::{ChartFunction, Pullback};

/// `|D(f∘g)(p) - (Df)(g·p)| / (1 + |(Df)(g·p)|)`.
pub fn invariance_residual(
    op: &DifferentialOperator,
    g: &dyn ChartMap,
    f: &dyn ChartFunction,
    point: &[f64],
) -> Result<f64> {
    if g.source() != op.chart() || g.target() != op.chart() {
        return Err(Error::Shape(format!(
            "{} and the group element act on different charts",
            op.name()
        )));
    }
    let gp = g.map_point(point)?;
    let pulled = Pullback { f, map: g };
    let lhs = op.evaluate(point, &pulled)?;
    let rhs = op.evaluate(&gp, f)?;
    Ok(relative(lhs, rhs))
}

fn relative(lhs: C64, rhs: C64) -> f64 {
    (lhs - rhs).norm() / (1.0 + rhs.norm())
}

/// A disk operator paired with the half-plane operator it should equal
/// under the partial Cayley transform, up to a constant factor.
pub struct DiskTransfer {
    pub disk: DifferentialOperator,
    pub half_plane: DifferentialOperator,
    /// `disk = factor · Φ^*(half_plane)`.
    pub factor: f64,
}

impl DiskTransfer {
    pub fn residual(&self, f: &dyn ChartFunction, disk_point: &[f64]) -> Result<f64> {
        transfer_residual(&self.disk, &self.half_plane, self.factor, f, disk_point)
    }
}

/// `|(D_𝔻 f)(p) - c (D (f∘Φ⁻¹))(Φ(p))| / (1 + |c (D (f∘Φ⁻¹))(Φ(p))|)`.
pub fn transfer_residual(
    disk: &DifferentialOperator,
    half_plane: &DifferentialOperator,
    factor: f64,
    f: &dyn ChartFunction,
    disk_point: &[f64],
) -> Result<f64> {
    if disk.model() != Model::Disk || half_plane.model() != Model::HalfPlane {
        return Err(Error::Invalid(
            "transfer expects a disk operator and a half-plane operator".into(),
        ));
    }
    if disk.chart() != half_plane.chart() {
        return Err(Error::Shape(
            "transfer operators live on different charts".into(),
        ));
    }
    let chart = disk.chart();
    let inv = InverseCayleyMap { chart };
    let cayley = crate::groups::CayleyMap { chart };
    let q = cayley.map_point(disk_point)?;
    let lhs = disk.evaluate(disk_point, f)?;
    let rhs = half_plane.evaluate(&q, &Pullback { f, map: &inv })? * factor;
    Ok(relative(lhs, rhs))
}
