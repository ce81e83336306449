//! Invariant Riemannian metrics, their components in the real chart, and an
//! independent Laplace–Beltrami evaluator.
//!
//! Metrics are given as quadratic forms in the differentials `dΩ, dZ` (or
//! `dW, dη`). Components come from polarization over chart basis vectors, so
//! the symmetric-matrix chart convention (`x_ij`, `i < j`, fills two slots)
//! is handled by the same `unpack` used everywhere else.

use num_complex::Complex64 as C64;

use crate::chart::RealChart;
use crate::error::{Error, Result};
use crate::groups::ChartMap;
use crate::jet::Jet;
use crate::linalg::{Mat, RMat};
use crate::operators::{DifferentialOperator, Model, Op};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MetricKind {
    /// `A tr(Y⁻¹dΩ Y⁻¹dΩ̄)` on `ℍ_n`.
    Siegel { a: f64 },
    /// `ds²_{n,m;A,B}` on `ℍ_{n,m}`.
    SiegelJacobi { a: f64, b: f64 },
    /// `ds²_{𝔻_{n,m};A,B}` on `𝔻_{n,m}`.
    Disk { a: f64, b: f64 },
    /// Sum of squares of the chart differentials.
    Euclidean,
    /// `Σ (dx_i² + dy_i²) / y²` on `ℍ_1`; the Siegel metric with `A = 1`, kept as a named control.
    Hyperbolic,
}

/// A metric on a chart, evaluated on jets of the base point.
#[derive(Clone, Copy, Debug)]
pub struct MetricTensor {
    chart: RealChart,
    kind: MetricKind,
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn positive(x: f64, name: &str) -> Result<()> {
    if x > 0.0 {
        Ok(())
    } else {
        Err(Error::Invalid(format!("{name} must be positive, got {x}")))
    }
}

pub fn siegel_metric(a: f64, n: usize) -> Result<MetricTensor> {
    positive(a, "A")?;
    Ok(MetricTensor {
        chart: RealChart::new(n, 0)?,
        kind: MetricKind::Siegel { a },
    })
}

pub fn siegel_jacobi_metric(a: f64, b: f64, n: usize, m: usize) -> Result<MetricTensor> {
    positive(a, "A")?;
    positive(b, "B")?;
    Ok(MetricTensor {
        chart: RealChart::new(n, m)?,
        kind: MetricKind::SiegelJacobi { a, b },
    })
}

pub fn disk_metric(a: f64, b: f64, n: usize, m: usize) -> Result<MetricTensor> {
    positive(a, "A")?;
    positive(b, "B")?;
    Ok(MetricTensor {
        chart: RealChart::new(n, m)?,
        kind: MetricKind::Disk { a, b },
    })
}

pub fn euclidean_metric(chart: RealChart) -> MetricTensor {
    MetricTensor {
        chart,
        kind: MetricKind::Euclidean,
    }
}

pub fn hyperbolic_metric() -> MetricTensor {
    MetricTensor {
        chart: RealChart::new(1, 0).expect("n = 1"),
        kind: MetricKind::Hyperbolic,
    }
}

type Form = Box<dyn Fn(&Mat<Jet>, &Mat<Jet>) -> Jet>;

impl MetricTensor {
    pub fn chart(&self) -> RealChart {
        self.chart
    }

    pub fn kind(&self) -> MetricKind {
        self.kind
    }

    pub fn model(&self) -> Model {
        match self.kind {
            MetricKind::Disk { .. } => Model::Disk,
            _ => Model::HalfPlane,
        }
    }

    /// The quadratic form at the point, as a function of `(dΩ, dZ)`.
    fn form(&self, coords: &[Jet]) -> Result<Form> {
        let (o, z) = self.chart.unpack_generic(coords)?;
        let n = self.chart.n();
        let one = Mat::identity(n, o.zero_elem());
        Ok(match self.kind {
            MetricKind::Euclidean => {
                let zero = o.zero_elem().clone();
                Box::new(move |dw, dz| {
                    let mut acc = zero.clone();
                    for i in 0..dw.rows() {
                        for j in i..dw.cols() {
                            acc += &(&dw[(i, j)] * &dw[(i, j)].conj());
                        }
                    }
                    for x in dz.data() {
                        acc += &(x * &x.conj());
                    }
                    acc
                })
            }
            MetricKind::Siegel { a } | MetricKind::SiegelJacobi { a, .. } => {
                let b = match self.kind {
                    MetricKind::SiegelJacobi { b, .. } => Some(b),
                    _ => None,
                };
                let yi = o.im().inverse()?;
                let v = z.im();
                let vy = v.mul(&yi);
                let yvvy = vy.transpose().mul(&vy);
                Box::new(move |d_o, dz| {
                    let core = yi.mul(d_o).mul(&yi).mul(&d_o.conj());
                    let mut q = core.trace().scale(re(a));
                    if let Some(b) = b {
                        let t1 = yvvy.mul(d_o).mul(&yi).mul(&d_o.conj()).trace();
                        let t2 = yi.mul(&dz.transpose()).mul(&dz.conj()).trace();
                        let t3 = vy.mul(d_o).mul(&yi).mul(&dz.conj().transpose()).trace();
                        let t4 = vy.mul(&d_o.conj()).mul(&yi).mul(&dz.transpose()).trace();
                        q += &(&(&(&t1 + &t2) - &t3) - &t4).scale(re(b));
                    }
                    q
                })
            }
            MetricKind::Hyperbolic => {
                let y2 = (&o[(0, 0)].im() * &o[(0, 0)].im()).recip()?;
                Box::new(move |d_o, _| &y2 * &(&d_o[(0, 0)] * &d_o[(0, 0)].conj()))
            }
            MetricKind::Disk { a, b } => {
                let (w, e) = (o, z);
                let (wb, eb) = (w.conj(), e.conj());
                let p1 = one.sub(&w.mul(&wb)).inverse()?;
                let p2 = one.sub(&wb.mul(&w)).inverse()?;
                let l = one.sub(&w).inverse()?;
                let lb = one.sub(&wb).inverse()?;
                let (et, ebt) = (e.transpose(), eb.transpose());
                let cb = e.mul(&wb).sub(&eb).mul(&p1);
                let cc = eb.mul(&w).sub(&e).mul(&p2);
                // Coefficients of `dW P2 dW̄` inside the trace.
                let cw = p1
                    .mul(&et)
                    .mul(&e)
                    .mul(&p2)
                    .mul(&wb)
                    .neg()
                    .sub(&w.mul(&p2).mul(&ebt).mul(&eb).mul(&p1))
                    .add(&p1.mul(&et).mul(&eb).mul(&p1))
                    .add(&lb.mul(&ebt).mul(&e).mul(&wb).mul(&p1))
                    .add(
                        &lb.mul(&one.sub(&w))
                            .mul(&p2)
                            .mul(&ebt)
                            .mul(&e)
                            .mul(&p2)
                            .mul(&one.sub(&wb))
                            .mul(&l),
                    )
                    .sub(&p1.mul(&one.sub(&w)).mul(&lb).mul(&ebt).mul(&e).mul(&l));
                Box::new(move |dw, de| {
                    let dwb = dw.conj();
                    let deb = de.conj();
                    let core = p1.mul(dw).mul(&p2).mul(&dwb).trace().scale(re(4.0 * a));
                    let t1 = p1.mul(&de.transpose()).mul(&deb).trace();
                    let t2 = cb.mul(dw).mul(&p2).mul(&deb.transpose()).trace();
                    let t3 = cc.mul(&dwb).mul(&p1).mul(&de.transpose()).trace();
                    let t4 = cw.mul(dw).mul(&p2).mul(&dwb).trace();
                    &core + &(&(&(&t1 + &t2) + &t3) + &t4).scale(re(4.0 * b))
                })
            }
        })
    }

    /// Components `g_ij` at the point, as jets of the point.
    pub fn components(&self, coords: &[Jet]) -> Result<Mat<Jet>> {
        let d = self.chart.dim();
        if coords.len() != d {
            return Err(Error::Shape(format!(
                "{} coordinates for a chart of dimension {d}",
                coords.len()
            )));
        }
        let form = self.form(coords)?;
        let zero = coords[0].lift(re(0.0));
        let lift = |v: &[f64]| -> Result<(Mat<Jet>, Mat<Jet>)> {
            let (a, b) = self.chart.unpack(v)?;
            Ok((Mat::lift_from(&a, &zero), Mat::lift_from(&b, &zero)))
        };
        let mut unit = vec![0.0; d];
        let mut diag = Vec::with_capacity(d);
        for i in 0..d {
            unit[i] = 1.0;
            let (a, b) = lift(&unit)?;
            diag.push(form(&a, &b));
            unit[i] = 0.0;
        }
        let mut g = Mat::zeros(d, d, &zero);
        for i in 0..d {
            g[(i, i)] = diag[i].clone();
            for j in i + 1..d {
                unit[i] = 1.0;
                unit[j] = 1.0;
                let (a, b) = lift(&unit)?;
                let q = form(&a, &b);
                unit[i] = 0.0;
                unit[j] = 0.0;
                let gij = (&(&q - &diag[i]) - &diag[j]).scale(re(0.5));
                g[(i, j)] = gij.clone();
                g[(j, i)] = gij;
            }
        }
        Ok(g)
    }

    /// Real component matrix at a point.
    pub fn components_at(&self, point: &[f64]) -> Result<RMat> {
        let g = self.components(&Jet::coordinates(point, 0))?;
        Ok(g.value().real_part())
    }

    /// `g_p(ξ, ζ)`.
    pub fn inner(&self, point: &[f64], xi: &[f64], zeta: &[f64]) -> Result<f64> {
        let g = self.components_at(point)?;
        let d = self.chart.dim();
        let mut acc = 0.0;
        for i in 0..d {
            for j in 0..d {
                acc += xi[i] * g[(i, j)] * zeta[j];
            }
        }
        Ok(acc)
    }
}

/// `Δ_g f = (1/√det G) Σ_ij ∂_i(√det G · G^{ij} ∂_j f)`, evaluated on jets.
pub fn laplace_beltrami(metric: &MetricTensor) -> DifferentialOperator {
    let mt = *metric;
    let op = Op::from_fn(2, move |fr, f| {
        let d = mt.chart.dim();
        let g = mt.components(fr.coords())?;
        let ginv = g.inverse()?;
        let sq = g.det()?.sqrt()?;
        let df: Vec<Jet> = (0..d).map(|j| f.partial(j)).collect::<Result<_>>()?;
        let mut acc: Option<Jet> = None;
        for i in 0..d {
            let mut inner = &(&sq * &ginv[(i, 0)]) * &df[0];
            for j in 1..d {
                inner += &(&(&sq * &ginv[(i, j)]) * &df[j]);
            }
            let t = inner.partial(i)?;
            acc = Some(match acc {
                None => t,
                Some(a) => a + t,
            });
        }
        let acc = acc.ok_or_else(|| Error::Shape("empty chart".into()))?;
        Ok(&acc * &sq.truncate(acc.order()).recip()?)
    });
    DifferentialOperator::new(
        format!("LB[{:?}]", metric.kind),
        metric.chart,
        metric.model(),
        op,
    )
}

/// Real Jacobian `∂(map)_a/∂p_b` at `point`.
pub fn jacobian(map: &dyn ChartMap, point: &[f64]) -> Result<RMat> {
    let out = map.map_jets(&Jet::coordinates(point, 1))?;
    let d = point.len();
    let mut exps = vec![0u8; d];
    let mut j = RMat::real_zeros(out.len(), d);
    for (a, o) in out.iter().enumerate() {
        for b in 0..d {
            exps[b] = 1;
            j[(a, b)] = o.coeff(&exps).re;
            exps[b] = 0;
        }
    }
    Ok(j)
}

/// `max |G_src(p) - ᵗJ G_dst(map(p)) J| / (1 + max |G_src(p)|)`: zero iff `map` pulls `dst` back to `src` at `p`.
pub fn pullback_residual(
    src: &MetricTensor,
    dst: &MetricTensor,
    map: &dyn ChartMap,
    point: &[f64],
) -> Result<f64> {
    let j = jacobian(map, point)?;
    let q = map.map_point(point)?;
    let gs = src.components_at(point)?;
    let gd = dst.components_at(&q)?;
    let pulled = j.transpose().mul(&gd).mul(&j);
    let diff = gs.sub(&pulled).max_abs();
    Ok(diff / (1.0 + gs.max_abs()))
}

/// Pullback invariance of a metric under a group element: `g_p(ξ, ζ) = g_{g·p}(Dg ξ, Dg ζ)`.
pub fn pullback_invariance(metric: &MetricTensor, g: &dyn ChartMap, point: &[f64]) -> Result<f64> {
    pullback_residual(metric, metric, g, point)
}

/// `(det Y)^{-(n+1)}` on `ℍ_n`.
pub fn volume_element(n: usize, point: &[f64]) -> Result<f64> {
    let chart = RealChart::new(n, 0)?;
    let (o, _) = chart.unpack(point)?;
    let y = o.imag_part();
    if !y.is_positive_definite() {
        return Err(Error::Domain("Im Ω is not positive definite".into()));
    }
    Ok(y.det()?.powi(-(n as i32 + 1)))
}

/// `|density(p) - density(g·p) |det Dg(p)|| / density(p)`.
pub fn volume_invariance(g: &dyn ChartMap, point: &[f64]) -> Result<f64> {
    let n = g.source().n();
    if g.source().m() != 0 {
        return Err(Error::Invalid(
            "volume element is defined on the Siegel space".into(),
        ));
    }
    let j = jacobian(g, point)?;
    let q = g.map_point(point)?;
    let lhs = volume_element(n, point)?;
    let rhs = volume_element(n, &q)? * j.det()?.abs();
    Ok((lhs - rhs).abs() / lhs)
}
