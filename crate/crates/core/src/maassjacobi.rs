//! Eigenfunctions of `Δ_{1,1;1,1}`, the Bessel function `K_s` they use, and the
//! `|_{ρ,M}` slash action with scalar `ρ = det^k`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64 as C64;

use crate::chart::RealChart;
use crate::error::{Error, Result};
use crate::groups::{ChartMap, JacobiElement};
use crate::jet::Jet;
use crate::linalg::{Mat, RMat};
use crate::operators::{jacobi_laplacian, DifferentialOperator};
use crate::scalar::Scalar;
use crate::testfn::ChartFunction;

const GL_POINTS: usize = 20;
const QUAD_TOL: f64 = 1e-12;
const MAX_PANELS: usize = 1 << 14;

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration on `P_n`.
fn gauss_legendre() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GL_POINTS;
        let mut rule = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
        }
        rule
    })
}

/// Upper limit with `e^{-z cosh u} e^{|Re s| u} cosh(u)^k` below `1e-18` relative to the peak.
fn upper_limit(s: C64, z: f64, k: usize) -> f64 {
    let a = s.re.abs();
    let mut u: f64 = 1.0;
    while z * u.cosh() - a * u - k as f64 * u < 42.0 + z {
        u += 0.5;
    }
    u
}

/// `∫₀^U (-cosh u)^k e^{-z cosh u} cosh(su) du` for `k = 0..=order`, refined by
/// doubling the panel count until successive estimates agree.
fn bessel_derivatives(s: C64, z: f64, order: usize) -> Result<Vec<C64>> {
    if z.is_nan() || z <= 0.0 || !z.is_finite() {
        return Err(Error::Domain(format!("K_s(z) needs z > 0, got {z}")));
    }
    let umax = upper_limit(s, z, order);
    let rule = gauss_legendre();
    let integrate = |panels: usize| -> Vec<C64> {
        let h = umax / panels as f64;
        let mut acc = vec![C64::new(0.0, 0.0); order + 1];
        for p in 0..panels {
            let mid = (p as f64 + 0.5) * h;
            for &(x, w) in rule {
                let u = mid + 0.5 * h * x;
                let c = u.cosh();
                let mut term = (s * u).cosh() * (-z * c).exp() * (0.5 * h * w);
                for a in acc.iter_mut() {
                    *a += term;
                    term *= -c;
                }
            }
        }
        acc
    };
    let mut panels = 8;
    let mut prev = integrate(panels);
    while panels < MAX_PANELS {
        panels *= 2;
        let next = integrate(panels);
        let close = prev
            .iter()
            .zip(&next)
            .all(|(a, b)| (a - b).norm() <= QUAD_TOL * (1.0 + b.norm()));
        if close {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::Quadrature(format!(
        "K_{s}({z}) did not settle with {MAX_PANELS} panels"
    )))
}

/// `K_s(z) = ½∫₀^∞ exp(-z(t + 1/t)/2) t^{s-1} dt = ∫₀^∞ e^{-z cosh u} cosh(su) du`.
pub fn bessel_k(s: C64, z: f64) -> Result<C64> {
    Ok(bessel_derivatives(s, z, 0)?[0])
}

/// `K_s` composed with a jet; derivatives in `z` are taken under the integral sign.
pub fn bessel_k_jet(s: C64, z: &Jet) -> Result<Jet> {
    let z0 = z.value();
    if z0.im != 0.0 {
        return Err(Error::Domain(format!("K_s on a complex argument {z0}")));
    }
    let d = bessel_derivatives(s, z0.re, z.order())?;
    let mut fact = 1.0;
    let taylor: Vec<C64> = d
        .iter()
        .enumerate()
        .map(|(k, v)| {
            if k > 0 {
                fact *= k as f64;
            }
            v / fact
        })
        .collect();
    Ok(z.compose_taylor(&taylor))
}

/// The eigenfunctions listed for `Δ_{1,1;1,1}` in the coordinates `(x, y, u, v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EigenTag {
    /// `y^{1/2} K_{s-1/2}(2π|a|y) e^{2πiax}`.
    BesselWave,
    Ys,
    YsX,
    YsU,
    YsV,
    YsUV,
    YsXV,
    X,
    Y,
    U,
    V,
    XV,
    UV,
}

impl EigenTag {
    pub const ALL: [EigenTag; 13] = [
        EigenTag::BesselWave,
        EigenTag::Ys,
        EigenTag::YsX,
        EigenTag::YsU,
        EigenTag::YsV,
        EigenTag::YsUV,
        EigenTag::YsXV,
        EigenTag::X,
        EigenTag::Y,
        EigenTag::U,
        EigenTag::V,
        EigenTag::XV,
        EigenTag::UV,
    ];

    /// `s(s-1)`, `s(s+1)` or `0` by family.
    pub fn eigenvalue(self, s: C64) -> C64 {
        match self {
            EigenTag::BesselWave | EigenTag::Ys | EigenTag::YsX | EigenTag::YsU => s * (s - 1.0),
            EigenTag::YsV | EigenTag::YsUV | EigenTag::YsXV => s * (s + 1.0),
            _ => C64::new(0.0, 0.0),
        }
    }

    pub fn uses_s(self) -> bool {
        !matches!(
            self,
            EigenTag::X | EigenTag::Y | EigenTag::U | EigenTag::V | EigenTag::XV | EigenTag::UV
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenCandidate {
    pub tag: EigenTag,
    pub s: C64,
    /// Frequency of the Bessel wave; nonzero there, ignored elsewhere.
    pub a: f64,
    pub claimed: C64,
}

impl EigenCandidate {
    pub fn new(tag: EigenTag, s: C64, a: f64) -> Result<Self> {
        if tag == EigenTag::BesselWave && a == 0.0 {
            return Err(Error::Invalid("the Bessel wave needs a != 0".into()));
        }
        Ok(EigenCandidate {
            tag,
            s,
            a,
            claimed: tag.eigenvalue(s),
        })
    }
}

impl ChartFunction for EigenCandidate {
    fn jet(&self, c: &[Jet]) -> Result<Jet> {
        if c.len() != 4 {
            return Err(Error::Shape(format!(
                "eigenfunctions live on H_1,1, got {} coordinates",
                c.len()
            )));
        }
        let (x, y, u, v) = (&c[0], &c[1], &c[2], &c[3]);
        let ys = || y.powc(self.s);
        Ok(match self.tag {
            EigenTag::BesselWave => {
                let k = bessel_k_jet(
                    self.s - 0.5,
                    &y.scale(C64::new(2.0 * PI * self.a.abs(), 0.0)),
                )?;
                let wave = x.scale(C64::new(0.0, 2.0 * PI * self.a)).exp();
                &(&y.sqrt()? * &k) * &wave
            }
            EigenTag::Ys => ys()?,
            EigenTag::YsX => &ys()? * x,
            EigenTag::YsU => &ys()? * u,
            EigenTag::YsV => &ys()? * v,
            EigenTag::YsUV => &(&ys()? * u) * v,
            EigenTag::YsXV => &(&ys()? * x) * v,
            EigenTag::X => x.clone(),
            EigenTag::Y => y.clone(),
            EigenTag::U => u.clone(),
            EigenTag::V => v.clone(),
            EigenTag::XV => x * v,
            EigenTag::UV => u * v,
        })
    }
}

/// `Δ_{1,1;1,1}`.
pub fn laplacian_11() -> DifferentialOperator {
    jacobi_laplacian(1.0, 1.0, RealChart::new(1, 1).expect("n = 1")).expect("A = B = 1")
}

/// `max |Δf - λf| / (1 + |λf|)` over the points `(x, y, u, v)`.
pub fn eigen_check(c: &EigenCandidate, points: &[[f64; 4]]) -> Result<f64> {
    let lap = laplacian_11();
    let mut worst: f64 = 0.0;
    for p in points {
        if p[1].is_nan() || p[1] <= 0.0 {
            return Err(Error::Domain(format!("y = {} is not positive", p[1])));
        }
        let lhs = lap.evaluate(p, c)?;
        let rhs = c.claimed * c.value(p)?;
        worst = worst.max((lhs - rhs).norm() / (1.0 + rhs.norm()));
    }
    Ok(worst)
}

/// Weight `k` of `ρ = det^k` and index `M` (symmetric, half-integral, semi-positive).
#[derive(Clone, Debug, PartialEq)]
pub struct SlashData {
    k: u32,
    index: RMat,
}

impl SlashData {
    pub fn new(k: u32, index: RMat) -> Result<Self> {
        if !index.is_symmetric(0.0) {
            return Err(Error::Invalid("index must be symmetric".into()));
        }
        if index
            .data()
            .iter()
            .any(|x| (2.0 * x - (2.0 * x).round()).abs() > 1e-12)
        {
            return Err(Error::Invalid("2M must have integer entries".into()));
        }
        let m = index.rows();
        for mask in 1u32..(1 << m) {
            let idx: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
            let sub = Mat::from_fn(idx.len(), idx.len(), &0.0, |i, j| index[(idx[i], idx[j])]);
            if sub.det()? < -1e-12 {
                return Err(Error::Invalid("index is not positive semi-definite".into()));
            }
        }
        Ok(SlashData { k, index })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn index(&self) -> &RMat {
        &self.index
    }

    /// The factor multiplying `f(g·(Ω, Z))` in `f|[g](Ω, Z)`.
    pub fn factor<S: Scalar>(&self, g: &JacobiElement, omega: &Mat<S>, z: &Mat<S>) -> Result<S> {
        if self.index.rows() != g.m() {
            return Err(Error::Shape(format!(
                "index is {0}x{0}, group has m = {1}",
                self.index.rows(),
                g.m()
            )));
        }
        let zero = omega.zero_elem();
        let b = g.blocks(zero);
        let mi = Mat::lift_from(&self.index, zero);
        let j = b.c.mul(omega).add(&b.d);
        let j_inv = j.inverse()?;
        let shifted = z.add(&b.lambda.mul(omega)).add(&b.mu);
        let first = shifted
            .transpose()
            .mul(&mi)
            .mul(&shifted)
            .mul(&j_inv)
            .mul(&b.c)
            .trace();
        let lt = b.lambda.transpose();
        let inner = b
            .lambda
            .mul(omega)
            .mul(&lt)
            .add(&b.lambda.mul(&z.transpose()).scale(C64::new(2.0, 0.0)))
            .add(&b.kappa)
            .add(&b.mu.mul(&lt));
        let second = mi.mul(&inner).trace();
        let two_pi_i = C64::new(0.0, 2.0 * PI);
        let phase = (second - first).scale(two_pi_i).exp();
        let det_inv = j.det()?.recip()?;
        let mut out = phase;
        for _ in 0..self.k {
            out = out * det_inv.clone();
        }
        Ok(out)
    }
}

/// `f|_{ρ,M}[g]` as a function of the chart coordinates.
pub struct Slashed<'a> {
    pub f: &'a dyn ChartFunction,
    pub data: &'a SlashData,
    pub g: &'a JacobiElement,
}

impl ChartFunction for Slashed<'_> {
    fn jet(&self, coords: &[Jet]) -> Result<Jet> {
        let factor = slash_factor_jet(self.data, self.g, coords)?;
        Ok(&factor * &self.f.jet(&self.g.map_jets(coords)?)?)
    }
}

fn slash_factor_jet(data: &SlashData, g: &JacobiElement, coords: &[Jet]) -> Result<Jet> {
    let chart = g.source();
    let (omega, z) = chart.unpack_generic(coords)?;
    data.factor(g, &omega, &z)
}

pub fn slash_action<'a>(
    f: &'a dyn ChartFunction,
    data: &'a SlashData,
    g: &'a JacobiElement,
) -> Slashed<'a> {
    Slashed { f, data, g }
}

/// `|((Df)|[g])(p) - D(f|[g])(p)| / (1 + |D(f|[g])(p)|)`.
pub fn compat_residual(
    d: &DifferentialOperator,
    data: &SlashData,
    f: &dyn ChartFunction,
    g: &JacobiElement,
    point: &[f64],
) -> Result<f64> {
    let gp = g.map_point(point)?;
    let factor = slash_factor_jet(data, g, &Jet::coordinates(point, 0))?.value();
    let lhs = factor * d.evaluate(&gp, f)?;
    let rhs = d.evaluate(point, &slash_action(f, data, g))?;
    Ok((lhs - rhs).norm() / (1.0 + rhs.norm()))
}

/// Which composition law the slash action satisfies at one sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CocycleResidual {
    /// `|f|[g₁g₂] - (f|[g₁])|[g₂]|`, relative.
    pub right: f64,
    /// `|f|[g₁g₂] - (f|[g₂])|[g₁]|`, relative.
    pub left: f64,
}

pub fn cocycle_residual(
    data: &SlashData,
    f: &dyn ChartFunction,
    g1: &JacobiElement,
    g2: &JacobiElement,
    point: &[f64],
) -> Result<CocycleResidual> {
    let g12 = g1.mul(g2)?;
    let direct = slash_action(f, data, &g12).value(point)?;
    let s1 = slash_action(f, data, g1);
    let right = slash_action(&s1, data, g2).value(point)?;
    let s2 = slash_action(f, data, g2);
    let left = slash_action(&s2, data, g1).value(point)?;
    let rel = |a: C64| (a - direct).norm() / (1.0 + direct.norm());
    Ok(CocycleResidual {
        right: rel(right),
        left: rel(left),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_order_closed_form() {
        let k = bessel_k(C64::new(0.5, 0.0), 1.0).unwrap();
        let exact = (PI / 2.0).sqrt() * (-1.0f64).exp();
        assert!((k - exact).norm() < 1e-12, "{k}");
    }

    #[test]
    fn bessel_jet_matches_finite_difference() {
        let s = C64::new(1.3, 0.4);
        let z = Jet::variable(1, 2, 0, 0.7);
        let j = bessel_k_jet(s, &z).unwrap();
        let h = 1e-4;
        let fp = bessel_k(s, 0.7 + h).unwrap();
        let fm = bessel_k(s, 0.7 - h).unwrap();
        let d1 = (fp - fm) / (2.0 * h);
        assert!((j.derivative(&[1]) - d1).norm() < 1e-7);
    }

    #[test]
    fn nonpositive_argument_is_rejected() {
        assert!(matches!(
            bessel_k(C64::new(1.0, 0.0), 0.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn identity_slash_is_trivial() {
        let data = SlashData::new(2, RMat::from_rows(&[&[1.0]]).unwrap()).unwrap();
        let g = JacobiElement::identity(1, 1);
        let f = EigenCandidate::new(EigenTag::XV, C64::new(0.0, 0.0), 0.0).unwrap();
        let p = [0.2, 1.1, 0.3, -0.4];
        let a = slash_action(&f, &data, &g).value(&p).unwrap();
        assert!((a - f.value(&p).unwrap()).norm() < 1e-14);
    }

    #[test]
    fn non_half_integral_index_is_rejected() {
        assert!(SlashData::new(0, RMat::from_rows(&[&[0.3]]).unwrap()).is_err());
        assert!(SlashData::new(0, RMat::from_rows(&[&[-1.0]]).unwrap()).is_err());
    }
}
