//! `U(n)`-invariant polynomials on `T_{n,m}` and the `U(n)` action.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{CMat, Mat};
use crate::scalar::Scalar;

/// A point `(ω, z)` of `T_{n,m}`: `ω` symmetric `n × n`, `z` of size `m × n`.
#[derive(Clone, Debug, PartialEq)]
pub struct TnmPoint {
    pub omega: CMat,
    pub z: CMat,
}

impl TnmPoint {
    pub fn new(omega: CMat, z: CMat) -> Result<Self> {
        let n = omega.rows();
        if omega.cols() != n || z.cols() != n {
            return Err(Error::Shape(format!(
                "ω is {:?} and z is {:?}",
                omega.shape(),
                z.shape()
            )));
        }
        Ok(TnmPoint {
            omega: omega.symmetrize(),
            z,
        })
    }

    pub fn n(&self) -> usize {
        self.omega.rows()
    }

    pub fn m(&self) -> usize {
        self.z.rows()
    }
}

/// `u·(ω, z) = (uωᵗu, zᵗu)`.
pub fn unitary_action(u: &CMat, p: &TnmPoint) -> Result<TnmPoint> {
    let n = p.n();
    if u.shape() != (n, n) {
        return Err(Error::Shape(format!(
            "u is {:?}, expected {n}x{n}",
            u.shape()
        )));
    }
    let defect = u.adjoint().mul(u).sub(&CMat::complex_identity(n)).max_abs();
    if defect > 1e-10 {
        return Err(Error::Invalid(format!(
            "u is not unitary (defect {defect:e})"
        )));
    }
    let ut = u.transpose();
    TnmPoint::new(u.mul(&p.omega).mul(&ut), p.z.mul(&ut))
}

/// Which part of a complex-valued expression is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Re,
    Im,
}

/// The defining expression of an invariant. Indices are zero-based.
#[derive(Clone, Debug, PartialEq)]
pub enum Kind {
    /// `tr((ωω̄)^{j+1})`.
    Q { j: usize },
    /// `(z (ω̄ω)^j ᵗz̄)_{kp}`, real part gives `α`, imaginary part `β`.
    Hermitian {
        j: usize,
        k: usize,
        p: usize,
        part: Part,
    },
    /// `(z (ω̄ω)^j ω̄ ᵗz)_{kp}`, real part gives `f`, imaginary part `g`.
    Bilinear {
        j: usize,
        k: usize,
        p: usize,
        part: Part,
    },
    /// `tr((ωω̄ + ᵗzSz̄)^j)`.
    Mixed { j: usize, s: CMat, part: Part },
    /// `tr((ᵗzSz̄)^k)`.
    Twisted { k: usize, s: CMat, part: Part },
    /// `tr((ωω̄)^i (ᵗzSz̄)^k (ωω̄ + ᵗzSz̄)^j)`.
    Theta {
        i: usize,
        k: usize,
        j: usize,
        s: CMat,
        part: Part,
    },
    /// `det((ωω̄)^j (ᵗzz̄)^k)`.
    Det { j: usize, k: usize, part: Part },
    /// `¼ωω̄` for `n = 1`.
    QuarterQ,
    /// `zz̄` for `n = m = 1`.
    Xi,
    /// `½ (z²ω̄)` for `n = m = 1`.
    HalfZ2Wbar { part: Part },
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantPolynomial {
    pub name: String,
    pub degree: usize,
    pub kind: Kind,
}

fn take<S: Scalar>(x: S, part: Part) -> S {
    match part {
        Part::Re => x.re(),
        Part::Im => x.im(),
    }
}

fn power<S: Scalar>(a: &Mat<S>, k: usize) -> Mat<S> {
    let mut r = Mat::identity(a.rows(), a.zero_elem());
    for _ in 0..k {
        r = r.mul(a);
    }
    r
}

fn check_index(i: usize, bound: usize, what: &str) -> Result<()> {
    if i >= bound {
        return Err(Error::Invalid(format!(
            "{what} index {i} out of range (< {bound})"
        )));
    }
    Ok(())
}

impl InvariantPolynomial {
    fn new(name: String, degree: usize, kind: Kind) -> Self {
        InvariantPolynomial { name, degree, kind }
    }

    /// Evaluates on `(ω, z)` over any scalar (numbers or jets).
    pub fn evaluate<S: Scalar>(&self, omega: &Mat<S>, z: &Mat<S>) -> Result<S> {
        let n = omega.rows();
        let m = z.rows();
        if omega.shape() != (n, n) || z.cols() != n {
            return Err(Error::Shape("(ω, z) shapes do not conform".into()));
        }
        let zero = omega.zero_elem();
        let wb = omega.conj();
        let zb = z.conj();
        let ww = || omega.mul(&wb);
        let tzsz = |s: &CMat| -> Result<Mat<S>> {
            if s.shape() != (m, m) {
                return Err(Error::Shape(format!("S must be {m}x{m}")));
            }
            Ok(z.transpose().mul(&Mat::lift_from(s, zero)).mul(&zb))
        };
        Ok(match &self.kind {
            Kind::Q { j } => power(&ww(), j + 1).trace(),
            Kind::Hermitian { j, k, p, part } => {
                check_index(*k, m, "k")?;
                check_index(*p, m, "p")?;
                let h = z.mul(&power(&wb.mul(omega), *j)).mul(&zb.transpose());
                take(h[(*k, *p)].clone(), *part)
            }
            Kind::Bilinear { j, k, p, part } => {
                check_index(*k, m, "k")?;
                check_index(*p, m, "p")?;
                let b = z
                    .mul(&power(&wb.mul(omega), *j))
                    .mul(&wb)
                    .mul(&z.transpose());
                take(b[(*k, *p)].clone(), *part)
            }
            Kind::Mixed { j, s, part } => take(power(&ww().add(&tzsz(s)?), *j).trace(), *part),
            Kind::Twisted { k, s, part } => take(power(&tzsz(s)?, *k).trace(), *part),
            Kind::Theta { i, k, j, s, part } => {
                let t = tzsz(s)?;
                let w = ww();
                let prod = power(&w, *i)
                    .mul(&power(&t, *k))
                    .mul(&power(&w.add(&t), *j));
                take(prod.trace(), *part)
            }
            Kind::Det { j, k, part } => {
                let t = z.transpose().mul(&zb);
                take(power(&ww(), *j).mul(&power(&t, *k)).det()?, *part)
            }
            Kind::QuarterQ => {
                check_index(0, 1, "n=1")?;
                (omega[(0, 0)].clone() * wb[(0, 0)].clone()).scale(C64::new(0.25, 0.0))
            }
            Kind::Xi => z[(0, 0)].clone() * zb[(0, 0)].clone(),
            Kind::HalfZ2Wbar { part } => {
                let v = z[(0, 0)].clone() * z[(0, 0)].clone() * wb[(0, 0)].clone();
                take(v.scale(C64::new(0.5, 0.0)), *part)
            }
        })
    }

    pub fn evaluate_at(&self, p: &TnmPoint) -> Result<C64> {
        self.evaluate(&p.omega, &p.z)
    }
}

/// The generators `q_j, α^{(j)}_{kp}, β^{(j)}_{lq}, f^{(j)}_{kp}, g^{(j)}_{kp}`.
pub fn basic_generators(n: usize, m: usize) -> Vec<InvariantPolynomial> {
    let mut out = Vec::new();
    for j in 0..n {
        out.push(InvariantPolynomial::new(
            format!("q_{}", j + 1),
            2 * (j + 1),
            Kind::Q { j },
        ));
    }
    for j in 0..n {
        for k in 0..m {
            for p in k..m {
                out.push(InvariantPolynomial::new(
                    format!("alpha^({j})_{}{}", k + 1, p + 1),
                    2 + 2 * j,
                    Kind::Hermitian {
                        j,
                        k,
                        p,
                        part: Part::Re,
                    },
                ));
            }
        }
        for l in 0..m {
            for q in l + 1..m {
                out.push(InvariantPolynomial::new(
                    format!("beta^({j})_{}{}", l + 1, q + 1),
                    2 + 2 * j,
                    Kind::Hermitian {
                        j,
                        k: l,
                        p: q,
                        part: Part::Im,
                    },
                ));
            }
        }
        for k in 0..m {
            for p in k..m {
                for (part, tag) in [(Part::Re, "f"), (Part::Im, "g")] {
                    out.push(InvariantPolynomial::new(
                        format!("{tag}^({j})_{}{}", k + 1, p + 1),
                        3 + 2 * j,
                        Kind::Bilinear { j, k, p, part },
                    ));
                }
            }
        }
    }
    out
}

/// `n + n·m(m+1)/2 + n·m(m-1)/2 + n·m(m+1)`.
pub fn basic_generator_count(n: usize, m: usize) -> usize {
    n + n * m * (m + 1) / 2 + n * m * (m.saturating_sub(1)) / 2 + n * m * (m + 1)
}

/// `m_{j;S}`, `q_{k;S}`, `θ_{i,k,j;S}` and `r_{jk}`, real and imaginary parts.
pub fn extra_invariants(n: usize, m: usize, s: &CMat) -> Result<Vec<InvariantPolynomial>> {
    if s.shape() != (m, m) {
        return Err(Error::Shape(format!("S must be {m}x{m}")));
    }
    let parts = [(Part::Re, 1), (Part::Im, 2)];
    let mut out = Vec::new();
    for (part, tag) in parts {
        for j in 1..=n {
            out.push(InvariantPolynomial::new(
                format!("m^({tag})_{j};S"),
                2 * j,
                Kind::Mixed {
                    j,
                    s: s.clone(),
                    part,
                },
            ));
        }
        for k in 1..=m {
            out.push(InvariantPolynomial::new(
                format!("q^({tag})_{k};S"),
                2 * k,
                Kind::Twisted {
                    k,
                    s: s.clone(),
                    part,
                },
            ));
        }
        for i in 1..=n {
            for k in 1..=m {
                for j in 1..=n {
                    out.push(InvariantPolynomial::new(
                        format!("theta^({tag})_{i},{k},{j};S"),
                        2 * (i + k + j),
                        Kind::Theta {
                            i,
                            k,
                            j,
                            s: s.clone(),
                            part,
                        },
                    ));
                }
            }
        }
        for j in 1..=n {
            for k in 1..=m {
                out.push(InvariantPolynomial::new(
                    format!("r^({tag})_{j}{k}"),
                    2 * n * (j + k),
                    Kind::Det { j, k, part },
                ));
            }
        }
    }
    Ok(out)
}

/// `q = ¼ωω̄, ξ = zz̄, φ = ½Re(z²ω̄), ψ = ½Im(z²ω̄)` on `T_{1,1}`.
pub fn generators_11() -> [InvariantPolynomial; 4] {
    [
        InvariantPolynomial::new("q".into(), 2, Kind::QuarterQ),
        InvariantPolynomial::new("xi".into(), 2, Kind::Xi),
        InvariantPolynomial::new("phi".into(), 3, Kind::HalfZ2Wbar { part: Part::Re }),
        InvariantPolynomial::new("psi".into(), 3, Kind::HalfZ2Wbar { part: Part::Im }),
    ]
}

/// Real-coordinate forms of `q, ξ, φ, ψ` at `(x, y, u, v)`.
pub fn generators_11_real(x: f64, y: f64, u: f64, v: f64) -> [f64; 4] {
    [
        0.25 * (x * x + y * y),
        u * u + v * v,
        0.5 * (u * u - v * v) * x + u * v * y,
        0.5 * (v * v - u * u) * y + u * v * x,
    ]
}

/// Generators of `Pol_{1,m}^{U(1)}`: `q, α_kp, β_lq, f_kp, g_kp`.
pub fn generators_1m(m: usize) -> Vec<InvariantPolynomial> {
    let mut g = basic_generators(1, m);
    for p in g.iter_mut() {
        p.name = p.name.replace("^(0)", "").replace("q_1", "q");
    }
    g
}

/// Real-coordinate form of a `generators_1m` member at `(x, y, u_1, v_1, ..., u_m, v_m)`.
pub fn generator_1m_real(p: &InvariantPolynomial, coords: &[f64]) -> Result<f64> {
    let (x, y) = (coords[0], coords[1]);
    let u = |k: usize| coords[2 + 2 * k];
    let v = |k: usize| coords[3 + 2 * k];
    Ok(match p.kind {
        Kind::Q { j: 0 } => x * x + y * y,
        Kind::Hermitian {
            j: 0,
            k,
            p,
            part: Part::Re,
        } => u(k) * u(p) + v(k) * v(p),
        Kind::Hermitian {
            j: 0,
            k,
            p,
            part: Part::Im,
        } => u(p) * v(k) - u(k) * v(p),
        Kind::Bilinear {
            j: 0,
            k,
            p,
            part: Part::Re,
        } => x * (u(k) * u(p) - v(k) * v(p)) + y * (u(k) * v(p) + v(k) * u(p)),
        Kind::Bilinear {
            j: 0,
            k,
            p,
            part: Part::Im,
        } => x * (u(k) * v(p) + v(k) * u(p)) - y * (u(k) * u(p) - v(k) * v(p)),
        _ => return Err(Error::Unsupported(format!("no real form for {}", p.name))),
    })
}

/// `max_P |P(u·p) - P(p)| / (1 + |P(p)|)`.
pub fn invariance_residual(polys: &[InvariantPolynomial], u: &CMat, p: &TnmPoint) -> Result<f64> {
    let up = unitary_action(u, p)?;
    let mut worst: f64 = 0.0;
    for poly in polys {
        let a = poly.evaluate_at(p)?;
        let b = poly.evaluate_at(&up)?;
        worst = worst.max((a - b).norm() / (1.0 + a.norm()));
    }
    Ok(worst)
}
