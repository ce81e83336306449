use num_complex::Complex64 as C64;

use super::algebra::{crossed_trace, CoefMatrix, Op, OpMatrix};
use super::frame::Model;
use super::siegel::coef_y;
use super::{DifferentialOperator, MatrixDifferentialOperator};
use crate::chart::RealChart;
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::linalg::Mat;

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn coef_v(chart: RealChart) -> CoefMatrix {
    CoefMatrix::new("V", chart.m(), chart.n(), |fr| Ok(fr.rect()?.im()))
}

fn coef_vt(chart: RealChart) -> CoefMatrix {
    CoefMatrix::new("tV", chart.n(), chart.m(), |fr| {
        Ok(fr.rect()?.im().transpose())
    })
}

/// `V Y⁻¹ ᵗV`.
fn coef_vyv(chart: RealChart) -> CoefMatrix {
    CoefMatrix::new("V Y^-1 tV", chart.m(), chart.m(), |fr| {
        let v = fr.rect()?.im();
        Ok(v.mul(&fr.sym()?.im().inverse()?).mul(&v.transpose()))
    })
}

fn coef_det_y() -> CoefMatrix {
    CoefMatrix::new("det Y", 1, 1, |fr| {
        let d = fr.sym()?.im().det()?;
        Ok(Mat::from_fn(1, 1, &d, |_, _| d.clone()))
    })
}

fn h(chart: RealChart, name: String, op: Op) -> DifferentialOperator {
    DifferentialOperator::new(name, chart, Model::HalfPlane, op)
}

fn m1_op(chart: RealChart) -> Op {
    let e = OpMatrix::d_rect(chart);
    let eb = OpMatrix::d_rect_bar(chart);
    e.mul(&eb.transpose()).left(&coef_y(chart.n())).trace()
}

/// Derivative matrices and coefficients from which `M₂` is assembled. On
/// the half-plane these are the coordinate Wirtinger derivatives; on the disk
/// they are their Cayley substitutes, with `Y`, `V` taken at the image point.
pub(super) struct M2Data {
    pub d: OpMatrix,
    pub db: OpMatrix,
    pub e: OpMatrix,
    pub eb: OpMatrix,
    pub y: CoefMatrix,
    pub v: CoefMatrix,
    pub vt: CoefMatrix,
    pub vyv: CoefMatrix,
}

impl M2Data {
    fn half_plane(chart: RealChart) -> Self {
        M2Data {
            d: OpMatrix::d_sym(chart),
            db: OpMatrix::d_sym_bar(chart),
            e: OpMatrix::d_rect(chart),
            eb: OpMatrix::d_rect_bar(chart),
            y: coef_y(chart.n()),
            v: coef_v(chart),
            vt: coef_vt(chart),
            vyv: coef_vyv(chart),
        }
    }

    /// `[tr(Yᵗ(Y∂Ω̄)∂Ω), tr(VY⁻¹ᵗV ᵗ(Y∂Z̄)∂Z), tr(V ∂Z̄ V ∂Z), tr(V ᵗ(Y∂Ω̄)∂Z), tr(ᵗV ᵗ(Y∂Z̄)∂Ω)]`.
    fn terms(&self) -> [Op; 5] {
        let ybt = self.db.left(&self.y).transpose();
        let yebt = self.eb.left(&self.y).transpose();
        [
            ybt.mul(&self.d).left(&self.y).trace(),
            yebt.mul(&self.e).left(&self.vyv).trace(),
            crossed_trace(&self.v, &self.eb, &self.v, &self.e),
            ybt.mul(&self.e).left(&self.v).trace(),
            yebt.mul(&self.d).left(&self.vt).trace(),
        ]
    }

    /// `M₂` with the quadratic `V` term split as
    /// `½ tr(VY⁻¹ᵗV ᵗ(Y∂/∂Z̄)∂/∂Z) + ½ tr(V ∂/∂Z̄ V ∂/∂Z)`. The split comes from
    /// writing `Z = PΩ + Q`, where the metric has no `dΩ`-`(dP, dQ)` cross
    /// terms; both halves agree when `n = 1`.
    pub(super) fn corrected(&self) -> Op {
        let [t1, t2, vv, t3, t4] = self.terms();
        let half = re(0.5);
        t1.add(&t2.add(&vv).scale(half)).add(&t3).add(&t4)
    }

    fn printed(&self) -> Op {
        let [t1, t2, _, t3, t4] = self.terms();
        t1.add(&t2).add(&t3).add(&t4)
    }
}

/// The four terms of `M₂` as printed; invariant only for `n = 1`.
fn m2_printed_op(chart: RealChart) -> Op {
    M2Data::half_plane(chart).printed()
}

fn m2_op(chart: RealChart) -> Op {
    M2Data::half_plane(chart).corrected()
}

/// `M₁ = tr(Y ∂/∂Z ᵗ(∂/∂Z̄))`.
pub fn op_m1(chart: RealChart) -> DifferentialOperator {
    h(chart, "M1".into(), m1_op(chart))
}

/// `M₂`, the Siegel trace form plus the `V`-coupling terms.
pub fn op_m2(chart: RealChart) -> DifferentialOperator {
    h(chart, "M2".into(), m2_op(chart))
}

/// `M₂` exactly as printed, kept as a reference: it fails invariance for `n >= 2`.
pub fn op_m2_printed(chart: RealChart) -> DifferentialOperator {
    h(chart, "M2(printed)".into(), m2_printed_op(chart))
}

/// `Δ_{n,m;A,B} = (4/A) M₂ + (4/B) M₁`.
pub fn jacobi_laplacian(a: f64, b: f64, chart: RealChart) -> Result<DifferentialOperator> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::Invalid(format!(
            "A and B must be positive, got {a}, {b}"
        )));
    }
    let op = m2_op(chart)
        .scale(re(4.0 / a))
        .add(&m1_op(chart).scale(re(4.0 / b)));
    Ok(h(
        chart,
        format!("Delta_{{{},{};{a},{b}}}", chart.n(), chart.m()),
        op,
    ))
}

/// `K = det(Y) det(∂/∂Z ᵗ(∂/∂Z̄))`, of order `2n`.
pub fn op_k(chart: RealChart) -> Result<DifferentialOperator> {
    let e = OpMatrix::d_rect(chart);
    let eb = OpMatrix::d_rect_bar(chart);
    let det = e.mul(&eb.transpose()).det()?;
    Ok(h(chart, "K".into(), det.times(&coef_det_y())))
}

fn t_matrix(chart: RealChart) -> OpMatrix {
    let e = OpMatrix::d_rect(chart);
    let eb = OpMatrix::d_rect_bar(chart);
    eb.transpose().mul(&e.left(&coef_y(chart.n())))
}

/// `T = ᵗ(∂/∂Z̄) Y ∂/∂Z`, an `m × m` matrix of second-order operators.
pub fn op_t(chart: RealChart) -> MatrixDifferentialOperator {
    let t = t_matrix(chart);
    let m = chart.m();
    let entries = (0..m * m)
        .map(|i| {
            h(
                chart,
                format!("T_{}{}", i / m + 1, i % m + 1),
                t.entry(i / m, i % m).clone(),
            )
        })
        .collect();
    MatrixDifferentialOperator::new(m, m, entries).expect("m*m entries")
}

/// `T_kl = Σ_ij y_ij ∂²/∂z̄_ki ∂z_lj` (zero-based `k, l`).
pub fn op_t_entry(chart: RealChart, k: usize, l: usize) -> Result<DifferentialOperator> {
    if k >= chart.m() || l >= chart.m() {
        return Err(Error::Invalid(format!("T_kl index ({k},{l}) out of range")));
    }
    Ok(op_t(chart).entry(k, l).clone())
}

/// `M₃ = [M₁, M₂]`.
pub fn op_m3(chart: RealChart) -> DifferentialOperator {
    op_m1(chart)
        .commutator(&op_m2(chart))
        .expect("same chart")
        .with_name("M3")
}

/// `P_kl = [K, T_kl]`.
pub fn op_p(chart: RealChart, k: usize, l: usize) -> Result<DifferentialOperator> {
    Ok(op_k(chart)?
        .commutator(&op_t_entry(chart, k, l)?)?
        .with_name(format!("P_{}{}", k + 1, l + 1)))
}

/// Scalar coefficient given by a function of the coordinate jets.
fn poly_coef(key: &str, f: fn(&[Jet]) -> Jet) -> CoefMatrix {
    CoefMatrix::new(key, 1, 1, move |fr| {
        let c = f(fr.coords());
        Ok(Mat::from_fn(1, 1, &c, |_, _| c.clone()))
    })
}

/// `D₁, D₂, D₃, D₄` on `ℍ_{1,1}` in the coordinates `(x, y, u, v)`.
pub fn d_operators_11() -> [DifferentialOperator; 4] {
    let chart = RealChart::new(1, 1).expect("n = 1");
    let (x, y, u, v) = (0, 1, 2, 3);
    let d = Op::partial;
    let dd = |a: usize, b: usize| d(a).compose(&d(b));
    let y1 = poly_coef("c:y", |c| c[1].clone());
    let y2 = poly_coef("c:y^2", |c| &c[1] * &c[1]);
    let v1 = poly_coef("c:v", |c| c[3].clone());
    let v2 = poly_coef("c:v^2", |c| &c[3] * &c[3]);
    let yv = poly_coef("c:yv", |c| &c[1] * &c[3]);

    let lap_uv = dd(u, u).add(&dd(v, v));
    let d1 = dd(x, x)
        .add(&dd(y, y))
        .times(&y2)
        .add(&lap_uv.times(&v2))
        .add(&dd(x, u).add(&dd(y, v)).times(&yv).scale(re(2.0)));
    let d2 = lap_uv.times(&y1);
    let d3 = d(y)
        .compose(&dd(u, u).sub(&dd(v, v)))
        .times(&y2)
        .sub(&d(x).compose(&dd(u, v)).times(&y2).scale(re(2.0)))
        .sub(&d(v).times(&v1).add(&Op::identity()).compose(&d2));
    let d4 = d(x)
        .compose(&dd(v, v).sub(&dd(u, u)))
        .times(&y2)
        .sub(&d(y).compose(&dd(u, v)).times(&y2).scale(re(2.0)))
        .sub(&d(u).times(&v1).compose(&d2));
    [
        h(chart, "D1".into(), d1),
        h(chart, "D2".into(), d2),
        h(chart, "D3".into(), d3),
        h(chart, "D4".into(), d4),
    ]
}
