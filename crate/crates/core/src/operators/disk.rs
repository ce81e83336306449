use num_complex::Complex64 as C64;

use super::algebra::{CoefMatrix, Op, OpMatrix};
use super::frame::{Frame, Model};
use super::jacobi::M2Data;
use super::{DifferentialOperator, MatrixDifferentialOperator};
use crate::chart::RealChart;
use crate::error::{Error, Result};
use crate::groups::cayley_generic;
use crate::jet::Jet;
use crate::linalg::Mat;

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn id(fr: &Frame, n: usize) -> Result<Mat<Jet>> {
    Ok(Mat::identity(n, fr.sym()?.zero_elem()))
}

/// `I - W̄W`.
fn coef_g2(n: usize) -> CoefMatrix {
    CoefMatrix::new("I-WbW", n, n, move |fr| {
        let w = fr.sym()?;
        Ok(id(fr, n)?.sub(&w.conj().mul(&w)))
    })
}

/// `I - WW̄`.
fn coef_g1(n: usize) -> CoefMatrix {
    CoefMatrix::new("I-WWb", n, n, move |fr| {
        let w = fr.sym()?;
        Ok(id(fr, n)?.sub(&w.mul(&w.conj())))
    })
}

fn coef_det_g2(n: usize) -> CoefMatrix {
    CoefMatrix::new("det(I-WbW)", 1, 1, move |fr| {
        let w = fr.sym()?;
        let d = id(fr, n)?.sub(&w.conj().mul(&w)).det()?;
        Ok(Mat::from_fn(1, 1, &d, |_, _| d.clone()))
    })
}

/// `ᵗ(η - η̄W)`.
fn coef_c2(chart: RealChart) -> CoefMatrix {
    CoefMatrix::new("t(eta-etab W)", chart.n(), chart.m(), |fr| {
        let (w, e) = (fr.sym()?, fr.rect()?);
        Ok(e.sub(&e.conj().mul(&w)).transpose())
    })
}

/// `η̄ - ηW̄`.
fn coef_c3(chart: RealChart) -> CoefMatrix {
    CoefMatrix::new("etab-eta Wb", chart.m(), chart.n(), |fr| {
        let (w, e) = (fr.sym()?, fr.rect()?);
        Ok(e.conj().sub(&e.mul(&w.conj())))
    })
}

/// Sum of the four `m × m` coefficients multiplying `ᵗ(∂/∂η̄)(I - W̄W)∂/∂η`.
fn coef_c47(chart: RealChart) -> CoefMatrix {
    let n = chart.n();
    CoefMatrix::new("S2:c47", chart.m(), chart.m(), move |fr| {
        let (w, e) = (fr.sym()?, fr.rect()?);
        let (wb, eb) = (w.conj(), e.conj());
        let i = id(fr, n)?;
        let g1_inv = i.sub(&w.mul(&wb)).inverse()?;
        let g2_inv = i.sub(&wb.mul(&w)).inverse()?;
        let c4 = e.mul(&wb).mul(&g1_inv).mul(&e.transpose());
        let c5 = eb.mul(&w).mul(&g2_inv).mul(&eb.transpose());
        let c6 = eb.mul(&g1_inv).mul(&e.transpose());
        let c7 = e.mul(&wb).mul(&w).mul(&g2_inv).mul(&eb.transpose());
        Ok(c6.add(&c7).sub(&c4).sub(&c5))
    })
}

/// `(Y, V)`, the imaginary parts of the Cayley image of `(W, η)`.
fn cayley_im(fr: &Frame) -> Result<(Mat<Jet>, Mat<Jet>)> {
    let (o, z) = cayley_generic(&*fr.sym()?, &*fr.rect()?)?;
    Ok((o.im(), z.im()))
}

/// `I - W` or `I - W̄`.
fn coef_i_minus_w(n: usize, conj: bool) -> CoefMatrix {
    let key = if conj { "I-Wb" } else { "I-W" };
    CoefMatrix::new(key, n, n, move |fr| {
        let w = fr.sym()?;
        let w = if conj { w.conj() } else { (*w).clone() };
        Ok(id(fr, n)?.sub(&w))
    })
}

/// `ηR` with `R = (I - W)⁻¹`, or its conjugate.
fn coef_eta_r(chart: RealChart, conj: bool) -> CoefMatrix {
    let n = chart.n();
    let key = if conj { "etab Rb" } else { "eta R" };
    CoefMatrix::new(key, chart.m(), n, move |fr| {
        let (w, e) = (fr.sym()?, fr.rect()?);
        let r = e.mul(&id(fr, n)?.sub(&w).inverse()?);
        Ok(if conj { r.conj() } else { r })
    })
}

/// Cayley substitutes for the half-plane derivatives:
/// `∂/∂Z = -(i/2)(I - W)∂/∂η` and
/// `∂/∂Ω = -(i/2)(I - W)[∂/∂W - ½(∂/∂η ηR + Rᵗη ᵗ∂/∂η)](I - W)`,
/// with conjugates for the barred derivatives. Both coefficients are
/// holomorphic, so the barred ones pass through them.
fn cayley_m2_data(chart: RealChart) -> M2Data {
    let n = chart.n();
    let sub = |conj: bool| {
        let c = if conj {
            C64::new(0.0, 0.5)
        } else {
            C64::new(0.0, -0.5)
        };
        let (dw, de) = if conj {
            (OpMatrix::d_sym_bar(chart), OpMatrix::d_rect_bar(chart))
        } else {
            (OpMatrix::d_sym(chart), OpMatrix::d_rect(chart))
        };
        let iw = coef_i_minus_w(n, conj);
        let er = coef_eta_r(chart, conj);
        let mixed = de.right(&er).add(&de.transpose().left(&er.transpose()));
        let d = dw.sub(&mixed.scale(re(0.5))).left(&iw).right(&iw).scale(c);
        (d, de.left(&iw).scale(c))
    };
    let (d, e) = sub(false);
    let (db, eb) = sub(true);
    let vt = CoefMatrix::new("Phi:tV", n, chart.m(), |fr| {
        Ok(cayley_im(fr)?.1.transpose())
    });
    M2Data {
        d,
        db,
        e,
        eb,
        y: CoefMatrix::new("Phi:Y", n, n, |fr| Ok(cayley_im(fr)?.0)),
        v: vt.transpose(),
        vt,
        vyv: CoefMatrix::new("Phi:VY^-1tV", chart.m(), chart.m(), |fr| {
            let (y, v) = cayley_im(fr)?;
            Ok(v.mul(&y.inverse()?).mul(&v.transpose()))
        }),
    }
}

fn d(chart: RealChart, name: String, op: Op) -> DifferentialOperator {
    DifferentialOperator::new(name, chart, Model::Disk, op)
}

fn s1_op(chart: RealChart) -> Op {
    let e = OpMatrix::d_rect(chart);
    let eb = OpMatrix::d_rect_bar(chart);
    e.mul(&eb.transpose()).left(&coef_g2(chart.n())).trace()
}

fn s2_op(chart: RealChart) -> Op {
    cayley_m2_data(chart).corrected().scale(re(4.0))
}

fn s2_printed_op(chart: RealChart) -> Op {
    let n = chart.n();
    let (g1, g2) = (coef_g1(n), coef_g2(n));
    let dw = OpMatrix::d_sym(chart);
    let dwb = OpMatrix::d_sym_bar(chart);
    let e = OpMatrix::d_rect(chart);
    let ebt = OpMatrix::d_rect_bar(chart).transpose();
    let g1dwb_t = dwb.left(&g1).transpose();
    let t1 = g1dwb_t.mul(&dw).left(&g1).trace();
    let t2 = ebt.mul(&dw.left(&g2)).left(&coef_c2(chart)).trace();
    let t3 = g1dwb_t.mul(&e).left(&coef_c3(chart)).trace();
    let t47 = ebt.mul(&e.left(&g2)).left(&coef_c47(chart)).trace();
    t1.add(&t2).add(&t3).add(&t47)
}

/// `S₁ = tr((I - W̄W) ∂/∂η ᵗ(∂/∂η̄))`.
pub fn disk_s1(chart: RealChart) -> DifferentialOperator {
    d(chart, "S1".into(), s1_op(chart))
}

/// `S₂ = 4 Φ^*(M₂)` written out in disk coordinates through the Cayley
/// substitutes of the derivatives. For `n = 1` it equals the seven-term form.
pub fn disk_s2(chart: RealChart) -> DifferentialOperator {
    d(chart, "S2".into(), s2_op(chart))
}

/// `S₂` exactly as printed, kept as a reference: it fails invariance for `n >= 2`.
pub fn disk_s2_printed(chart: RealChart) -> DifferentialOperator {
    d(chart, "S2(printed)".into(), s2_printed_op(chart))
}

/// `Δ_{𝔻;A,B} = S₂/A + S₁/B`.
pub fn disk_laplacian(a: f64, b: f64, chart: RealChart) -> Result<DifferentialOperator> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::Invalid(format!(
            "A and B must be positive, got {a}, {b}"
        )));
    }
    let op = s2_op(chart)
        .scale(re(1.0 / a))
        .add(&s1_op(chart).scale(re(1.0 / b)));
    Ok(d(
        chart,
        format!("DeltaD_{{{},{};{a},{b}}}", chart.n(), chart.m()),
        op,
    ))
}

/// `K_𝔻 = det(I - W̄W) det(∂/∂η ᵗ(∂/∂η̄))`.
pub fn disk_k(chart: RealChart) -> Result<DifferentialOperator> {
    let e = OpMatrix::d_rect(chart);
    let eb = OpMatrix::d_rect_bar(chart);
    let det = e.mul(&eb.transpose()).det()?;
    Ok(d(chart, "K_D".into(), det.times(&coef_det_g2(chart.n()))))
}

/// `T^𝔻 = ᵗ(∂/∂η̄)(I - W̄W)∂/∂η`.
pub fn disk_t(chart: RealChart) -> MatrixDifferentialOperator {
    let e = OpMatrix::d_rect(chart);
    let ebt = OpMatrix::d_rect_bar(chart).transpose();
    let t = ebt.mul(&e.left(&coef_g2(chart.n())));
    let m = chart.m();
    let entries = (0..m * m)
        .map(|i| {
            d(
                chart,
                format!("TD_{}{}", i / m + 1, i % m + 1),
                t.entry(i / m, i % m).clone(),
            )
        })
        .collect();
    MatrixDifferentialOperator::new(m, m, entries).expect("m*m entries")
}

/// `T^𝔻_kl = Σ_ij (δ_ij - Σ_r w̄_ir w_jr) ∂²/∂η̄_ki ∂η_lj` (zero-based `k, l`).
pub fn disk_t_entry(chart: RealChart, k: usize, l: usize) -> Result<DifferentialOperator> {
    if k >= chart.m() || l >= chart.m() {
        return Err(Error::Invalid(format!(
            "T^D_kl index ({k},{l}) out of range"
        )));
    }
    Ok(disk_t(chart).entry(k, l).clone())
}

/// `S₃ = [S₁, S₂]`.
pub fn disk_s3(chart: RealChart) -> DifferentialOperator {
    disk_s1(chart)
        .commutator(&disk_s2(chart))
        .expect("same chart")
        .with_name("S3")
}

/// `Q_kl = [K_𝔻, T^𝔻_kl]`.
pub fn disk_q(chart: RealChart, k: usize, l: usize) -> Result<DifferentialOperator> {
    Ok(disk_k(chart)?
        .commutator(&disk_t_entry(chart, k, l)?)?
        .with_name(format!("Q_{}{}", k + 1, l + 1)))
}
