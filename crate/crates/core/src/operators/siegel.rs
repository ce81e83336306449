use num_complex::Complex64 as C64;

use super::algebra::{CoefMatrix, Op, OpMatrix};
use super::frame::Model;
use super::DifferentialOperator;
use crate::chart::RealChart;
use crate::error::{Error, Result};

/// `Y = Im Ω`.
pub(super) fn coef_y(n: usize) -> CoefMatrix {
    CoefMatrix::new("Y", n, n, |fr| Ok(fr.sym()?.im()))
}

/// `Ω - Ω̄ = 2iY`.
pub(super) fn coef_2iy(n: usize) -> CoefMatrix {
    CoefMatrix::new("2iY", n, n, |fr| {
        Ok(fr.sym()?.im().scale(C64::new(0.0, 2.0)))
    })
}

/// `(Ω - Ω̄)⁻¹`.
fn coef_2iy_inv(n: usize) -> CoefMatrix {
    CoefMatrix::new("(2iY)^-1", n, n, |fr| {
        fr.sym()?.im().scale(C64::new(0.0, 2.0)).inverse()
    })
}

/// `tr(Y ᵗ(Y ∂/∂Ω̄) ∂/∂Ω)` on any chart.
pub(super) fn trace_form_op(chart: RealChart) -> Op {
    let y = coef_y(chart.n());
    OpMatrix::d_sym_bar(chart)
        .left(&y)
        .transpose()
        .mul(&OpMatrix::d_sym(chart))
        .left(&y)
        .trace()
}

fn siegel_chart(n: usize) -> Result<RealChart> {
    RealChart::new(n, 0)
}

/// `tr(Y ᵗ(Y ∂/∂Ω̄) ∂/∂Ω)` on `ℍ_n`.
pub fn siegel_trace_form(n: usize) -> Result<DifferentialOperator> {
    let chart = siegel_chart(n)?;
    Ok(DifferentialOperator::new(
        "tr(Y t(Y dOb) dO)",
        chart,
        Model::HalfPlane,
        trace_form_op(chart),
    ))
}

/// `Δ_{n;A} = (4/A) tr(Y ᵗ(Y ∂/∂Ω̄) ∂/∂Ω)`.
pub fn siegel_laplacian(a: f64, n: usize) -> Result<DifferentialOperator> {
    if a.is_nan() || a <= 0.0 {
        return Err(Error::Invalid(format!("A must be positive, got {a}")));
    }
    let chart = siegel_chart(n)?;
    let op = trace_form_op(chart).scale(C64::new(4.0 / a, 0.0));
    Ok(DifferentialOperator::new(
        format!("Delta_{{{n};{a}}}"),
        chart,
        Model::HalfPlane,
        op,
    ))
}

/// `H_j = tr A^{(j)}` with `A^{(1)} = ΛK + (n+1)/2 K` and the usual recursion.
pub fn maass_h(j: usize, n: usize) -> Result<DifferentialOperator> {
    if j == 0 || j > n {
        return Err(Error::Invalid(format!(
            "H_j needs 1 <= j <= n, got j={j}, n={n}"
        )));
    }
    let chart = siegel_chart(n)?;
    let two_iy = coef_2iy(n);
    let k = OpMatrix::d_sym(chart).left(&two_iy);
    let lam = OpMatrix::d_sym_bar(chart).left(&two_iy);
    let h = C64::new((n as f64 + 1.0) / 2.0, 0.0);
    let half = C64::new(0.5, 0.0);
    let a1 = lam.mul(&k).add(&k.scale(h));
    let mut a = a1.clone();
    for _ in 1..j {
        let last = lam
            .transpose()
            .mul(&a.transpose())
            .transpose()
            .left(&coef_2iy_inv(n))
            .transpose()
            .left(&two_iy)
            .scale(half);
        a = a1
            .mul(&a)
            .sub(&lam.mul(&a).scale(h))
            .add(&lam.then(&a.trace()).scale(half))
            .add(&last);
    }
    Ok(DifferentialOperator::new(
        format!("H_{j}"),
        chart,
        Model::HalfPlane,
        a.trace(),
    ))
}
