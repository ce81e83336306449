//! The Jacobi group `G^J = Sp(n,ℝ) ⋉ H_ℝ^{(n,m)}`, its disk model `G^J_*`, the
//! partial Cayley transform, the Lie algebra `𝔤^J` and the stabilizer `K^J`.

use num_complex::Complex64 as C64;

use crate::chart::RealChart;
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::linalg::{CMat, DiskJacobiPoint, Mat, RMat, SiegelJacobiPoint, SiegelPoint};
use crate::scalar::Scalar;

const I: C64 = C64 { re: 0.0, im: 1.0 };
const HALF: C64 = C64 { re: 0.5, im: 0.0 };

fn t(m: &RMat) -> RMat {
    m.transpose()
}

/// `J_n = [[0, I], [-I, 0]]`.
pub fn standard_j(n: usize) -> RMat {
    let mut j = RMat::real_zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = 1.0;
        j[(n + i, i)] = -1.0;
    }
    j
}

/// Element of `Sp(n,ℝ)`: `ᵗM J M = J`.
#[derive(Clone, Debug)]
pub struct SymplecticElement {
    n: usize,
    m: RMat,
}

impl SymplecticElement {
    /// Validates `ᵗMJM = J` up to `1e-9 (1 + |M|²)`.
    pub fn new(m: RMat) -> Result<Self> {
        if !m.is_square() || !m.rows().is_multiple_of(2) {
            return Err(Error::Shape(format!(
                "{}x{} is not 2n x 2n",
                m.rows(),
                m.cols()
            )));
        }
        let n = m.rows() / 2;
        let j = standard_j(n);
        let defect = t(&m).mul(&j).mul(&m).sub(&j).max_abs();
        let scale = 1.0 + m.max_abs().powi(2);
        if defect > 1e-9 * scale {
            return Err(Error::NotSymplectic(defect));
        }
        Ok(SymplecticElement { n, m })
    }

    pub fn from_blocks(a: &RMat, b: &RMat, c: &RMat, d: &RMat) -> Result<Self> {
        SymplecticElement::new(Mat::from_blocks(&[vec![a, b], vec![c, d]])?)
    }

    pub fn identity(n: usize) -> Self {
        SymplecticElement {
            n,
            m: RMat::real_identity(2 * n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &RMat {
        &self.m
    }

    pub fn a(&self) -> RMat {
        self.m.block(0, 0, self.n, self.n)
    }

    pub fn b(&self) -> RMat {
        self.m.block(0, self.n, self.n, self.n)
    }

    pub fn c(&self) -> RMat {
        self.m.block(self.n, 0, self.n, self.n)
    }

    pub fn d(&self) -> RMat {
        self.m.block(self.n, self.n, self.n, self.n)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Shape(format!(
                "Sp({}) times Sp({})",
                self.n, other.n
            )));
        }
        Ok(SymplecticElement {
            n: self.n,
            m: self.m.mul(&other.m),
        })
    }

    /// `M⁻¹ = [[ᵗD, -ᵗB], [-ᵗC, ᵗA]]`.
    pub fn inverse(&self) -> Self {
        let m = Mat::from_blocks(&[
            vec![&t(&self.d()), &t(&self.b()).neg()],
            vec![&t(&self.c()).neg(), &t(&self.a())],
        ])
        .expect("blocks conform");
        SymplecticElement { n: self.n, m }
    }

    /// `Ω ↦ (AΩ + B)(CΩ + D)⁻¹`.
    pub fn act(&self, p: &SiegelPoint) -> Result<SiegelPoint> {
        if p.n() != self.n {
            return Err(Error::Shape(format!(
                "Sp({}) acting on ℍ_{}",
                self.n,
                p.n()
            )));
        }
        let g = JacobiElement::new(self.clone(), HeisenbergElement::zero(self.n, 0))?;
        let (o, _) = g.act_generic(p.omega(), &CMat::complex_zeros(0, self.n))?;
        SiegelPoint::new(o)
    }
}

/// Element `(λ, μ; κ)` of `H_ℝ^{(n,m)}`; `κ + μ ᵗλ` is symmetric.
#[derive(Clone, Debug)]
pub struct HeisenbergElement {
    pub lambda: RMat,
    pub mu: RMat,
    pub kappa: RMat,
}

impl HeisenbergElement {
    pub fn new(lambda: RMat, mu: RMat, kappa: RMat) -> Result<Self> {
        let (m, n) = lambda.shape();
        if mu.shape() != (m, n) || kappa.shape() != (m, m) {
            return Err(Error::Shape("λ, μ must be m x n and κ m x m".into()));
        }
        let s = kappa.add(&mu.mul(&t(&lambda)));
        if !s.is_symmetric(1e-9 * (1.0 + s.max_abs())) {
            return Err(Error::Invalid("κ + μᵗλ is not symmetric".into()));
        }
        Ok(HeisenbergElement { lambda, mu, kappa })
    }

    pub fn zero(n: usize, m: usize) -> Self {
        HeisenbergElement {
            lambda: RMat::real_zeros(m, n),
            mu: RMat::real_zeros(m, n),
            kappa: RMat::real_zeros(m, m),
        }
    }

    pub fn n(&self) -> usize {
        self.lambda.cols()
    }

    pub fn m(&self) -> usize {
        self.lambda.rows()
    }

    /// `(λ+λ', μ+μ'; κ+κ'+λᵗμ'-μᵗλ')`.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.lambda.shape() != o.lambda.shape() {
            return Err(Error::Shape(
                "Heisenberg elements of different sizes".into(),
            ));
        }
        Ok(HeisenbergElement {
            lambda: self.lambda.add(&o.lambda),
            mu: self.mu.add(&o.mu),
            kappa: self
                .kappa
                .add(&o.kappa)
                .add(&self.lambda.mul(&t(&o.mu)))
                .sub(&self.mu.mul(&t(&o.lambda))),
        })
    }
}

/// Element `(M, (λ, μ; κ))` of `G^J`.
#[derive(Clone, Debug)]
pub struct JacobiElement {
    pub sp: SymplecticElement,
    pub heis: HeisenbergElement,
}

/// Blocks of a Jacobi group element over an arbitrary scalar type.
#[derive(Clone, Debug)]
pub struct JacobiBlocks<S: Scalar> {
    pub a: Mat<S>,
    pub b: Mat<S>,
    pub c: Mat<S>,
    pub d: Mat<S>,
    pub lambda: Mat<S>,
    pub mu: Mat<S>,
    pub kappa: Mat<S>,
}

impl<S: Scalar> JacobiBlocks<S> {
    /// `(Ω, Z) ↦ ((AΩ+B)(CΩ+D)⁻¹, (Z + λΩ + μ)(CΩ+D)⁻¹)`.
    pub fn act(&self, omega: &Mat<S>, z: &Mat<S>) -> Result<(Mat<S>, Mat<S>)> {
        let den = self.c.mul(omega).add(&self.d).inverse()?;
        let o = self.a.mul(omega).add(&self.b).mul(&den);
        let zz = z.add(&self.lambda.mul(omega)).add(&self.mu).mul(&den);
        Ok((o.symmetrize(), zz))
    }

    /// Reads the blocks of a `2(n+m)` embedded matrix.
    pub fn from_embedding(e: &Mat<S>, n: usize, m: usize) -> Result<Self> {
        if e.shape() != (2 * (n + m), 2 * (n + m)) {
            return Err(Error::Shape("embedding must be 2(n+m) square".into()));
        }
        let (r1, r2, r3) = (n, n + m, 2 * n + m);
        Ok(JacobiBlocks {
            a: e.block(0, 0, n, n),
            b: e.block(0, r2, n, n),
            c: e.block(r2, 0, n, n),
            d: e.block(r2, r2, n, n),
            lambda: e.block(r1, 0, m, n),
            mu: e.block(r1, r2, m, n),
            kappa: e.block(r1, r3, m, m),
        })
    }
}

impl JacobiElement {
    pub fn new(sp: SymplecticElement, heis: HeisenbergElement) -> Result<Self> {
        if sp.n() != heis.n() {
            return Err(Error::Shape(format!(
                "Sp({}) with H^({},{})",
                sp.n(),
                heis.n(),
                heis.m()
            )));
        }
        Ok(JacobiElement { sp, heis })
    }

    pub fn identity(n: usize, m: usize) -> Self {
        JacobiElement {
            sp: SymplecticElement::identity(n),
            heis: HeisenbergElement::zero(n, m),
        }
    }

    pub fn n(&self) -> usize {
        self.sp.n()
    }

    pub fn m(&self) -> usize {
        self.heis.m()
    }

    /// `(MM', (λ̃+λ', μ̃+μ'; κ+κ'+λ̃ᵗμ'-μ̃ᵗλ'))` with `(λ̃, μ̃) = (λ, μ)M'`.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.n() != o.n() || self.m() != o.m() {
            return Err(Error::Shape("Jacobi elements of different sizes".into()));
        }
        let h = &self.heis;
        let lt = h.lambda.mul(&o.sp.a()).add(&h.mu.mul(&o.sp.c()));
        let mt = h.lambda.mul(&o.sp.b()).add(&h.mu.mul(&o.sp.d()));
        let kappa = h
            .kappa
            .add(&o.heis.kappa)
            .add(&lt.mul(&t(&o.heis.mu)))
            .sub(&mt.mul(&t(&o.heis.lambda)));
        Ok(JacobiElement {
            sp: self.sp.mul(&o.sp)?,
            heis: HeisenbergElement {
                lambda: lt.add(&o.heis.lambda),
                mu: mt.add(&o.heis.mu),
                kappa,
            },
        })
    }

    pub fn inverse(&self) -> Self {
        let mi = self.sp.inverse();
        let h = &self.heis;
        let lambda = h.lambda.mul(&mi.a()).add(&h.mu.mul(&mi.c())).neg();
        let mu = h.lambda.mul(&mi.b()).add(&h.mu.mul(&mi.d())).neg();
        // the product with (λ̃, μ̃) = -(λ', μ') must have zero κ
        let kappa = h
            .kappa
            .neg()
            .add(&lambda.mul(&t(&mu)))
            .sub(&mu.mul(&t(&lambda)));
        JacobiElement {
            sp: mi,
            heis: HeisenbergElement { lambda, mu, kappa },
        }
    }

    pub fn blocks<S: Scalar>(&self, zero: &S) -> JacobiBlocks<S> {
        let l = |m: &RMat| Mat::lift_from(m, zero);
        JacobiBlocks {
            a: l(&self.sp.a()),
            b: l(&self.sp.b()),
            c: l(&self.sp.c()),
            d: l(&self.sp.d()),
            lambda: l(&self.heis.lambda),
            mu: l(&self.heis.mu),
            kappa: l(&self.heis.kappa),
        }
    }

    pub fn act_generic<S: Scalar>(&self, omega: &Mat<S>, z: &Mat<S>) -> Result<(Mat<S>, Mat<S>)> {
        if omega.shape() != (self.n(), self.n()) || z.shape() != (self.m(), self.n()) {
            return Err(Error::Shape(
                "point does not match the group element".into(),
            ));
        }
        self.blocks(omega.zero_elem()).act(omega, z)
    }

    pub fn act(&self, p: &SiegelJacobiPoint) -> Result<SiegelJacobiPoint> {
        let (o, z) = self.act_generic(p.omega(), p.z())?;
        SiegelJacobiPoint::new(o, z)
    }

    /// Embedding into `Sp(n+m, ℝ)`.
    pub fn embedding(&self) -> RMat {
        let (n, m) = (self.n(), self.m());
        let (a, b, c, d) = (self.sp.a(), self.sp.b(), self.sp.c(), self.sp.d());
        let h = &self.heis;
        let mut e = RMat::real_zeros(2 * (n + m), 2 * (n + m));
        let (r1, r2, r3) = (n, n + m, 2 * n + m);
        e.set_block(0, 0, &a);
        e.set_block(0, r2, &b);
        e.set_block(0, r3, &a.mul(&t(&h.mu)).sub(&b.mul(&t(&h.lambda))));
        e.set_block(r1, 0, &h.lambda);
        e.set_block(r1, r1, &RMat::real_identity(m));
        e.set_block(r1, r2, &h.mu);
        e.set_block(r1, r3, &h.kappa);
        e.set_block(r2, 0, &c);
        e.set_block(r2, r2, &d);
        e.set_block(r2, r3, &c.mul(&t(&h.mu)).sub(&d.mul(&t(&h.lambda))));
        e.set_block(r3, r3, &RMat::real_identity(m));
        e
    }

    pub fn from_embedding(e: &RMat, n: usize, m: usize) -> Result<Self> {
        let b = JacobiBlocks::from_embedding(e, n, m)?;
        JacobiElement::new(
            SymplecticElement::from_blocks(&b.a, &b.b, &b.c, &b.d)?,
            HeisenbergElement::new(b.lambda, b.mu, b.kappa)?,
        )
    }

    /// Largest entry difference of the embeddings.
    pub fn distance(&self, o: &Self) -> f64 {
        self.embedding().sub(&o.embedding()).max_abs()
    }
}

/// Element `([[P, Q], [Q̄, P̄]], (ξ, ξ̄; -iκ/2))` of `G^J_*`.
///
/// `κ` is the real matrix of the corresponding element of `G^J`.
#[derive(Clone, Debug)]
pub struct StarJacobiElement {
    pub p: CMat,
    pub q: CMat,
    pub xi: CMat,
    pub kappa: RMat,
}

impl StarJacobiElement {
    pub fn n(&self) -> usize {
        self.p.rows()
    }

    pub fn m(&self) -> usize {
        self.xi.rows()
    }

    pub fn identity(n: usize, m: usize) -> Self {
        StarJacobiElement {
            p: CMat::complex_identity(n),
            q: CMat::complex_zeros(n, n),
            xi: CMat::complex_zeros(m, n),
            kappa: RMat::real_zeros(m, m),
        }
    }

    /// Product in `SL(2n,ℂ) ⋉ H_ℂ` restricted to `G^J_*`.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.n() != o.n() || self.m() != o.m() {
            return Err(Error::Shape("star elements of different sizes".into()));
        }
        let p = self.p.mul(&o.p).add(&self.q.mul(&o.q.conj()));
        let q = self.p.mul(&o.q).add(&self.q.mul(&o.p.conj()));
        // ξ̃ = ξP' + ξ̄Q̄'
        let xt = self.xi.mul(&o.p).add(&self.xi.conj().mul(&o.q.conj()));
        // ζ'' = ζ + ζ' + ξ̃ᵗη' - η̃ᵗξ' with ζ = -iκ/2, η = ξ̄
        let cross = xt
            .mul(&o.xi.conj().transpose())
            .sub(&xt.conj().mul(&o.xi.transpose()))
            .scale(C64::new(0.0, 2.0));
        let kappa = self.kappa.add(&o.kappa).add(&cross.real_part());
        Ok(StarJacobiElement {
            p,
            q,
            xi: xt.add(&o.xi),
            kappa,
        })
    }

    /// `(W, η) ↦ ((PW+Q)(Q̄W+P̄)⁻¹, (η + ξW + ξ̄)(Q̄W+P̄)⁻¹)`.
    pub fn act_generic<S: Scalar>(&self, w: &Mat<S>, eta: &Mat<S>) -> Result<(Mat<S>, Mat<S>)> {
        if w.shape() != (self.n(), self.n()) || eta.shape() != (self.m(), self.n()) {
            return Err(Error::Shape(
                "point does not match the group element".into(),
            ));
        }
        let z = w.zero_elem();
        let l = |m: &CMat| Mat::lift_from(m, z);
        let (p, q, xi) = (l(&self.p), l(&self.q), l(&self.xi));
        let den = q.conj().mul(w).add(&p.conj()).inverse()?;
        let w2 = p.mul(w).add(&q).mul(&den);
        let e2 = eta.add(&xi.mul(w)).add(&xi.conj()).mul(&den);
        Ok((w2.symmetrize(), e2))
    }

    pub fn act(&self, p: &DiskJacobiPoint) -> Result<DiskJacobiPoint> {
        let (w, e) = self.act_generic(p.w(), p.eta())?;
        DiskJacobiPoint::new(w, e)
    }
}

/// The isomorphism `G^J → G^J_*` obtained by conjugating with `T_*`.
pub fn star_conjugate(g: &JacobiElement) -> StarJacobiElement {
    let (a, b, c, d) = (
        g.sp.a().to_complex(),
        g.sp.b().to_complex(),
        g.sp.c().to_complex(),
        g.sp.d().to_complex(),
    );
    let p = a.add(&d).add(&b.sub(&c).scale(I)).scale(HALF);
    let q = a.sub(&d).sub(&b.add(&c).scale(I)).scale(HALF);
    let xi = g
        .heis
        .lambda
        .to_complex()
        .add(&g.heis.mu.to_complex().scale(I))
        .scale(HALF);
    StarJacobiElement {
        p,
        q,
        xi,
        kappa: g.heis.kappa.clone(),
    }
}

/// Partial Cayley transform `Φ(W, η) = (i(I+W)(I-W)⁻¹, 2iη(I-W)⁻¹)`.
pub fn cayley_generic<S: Scalar>(w: &Mat<S>, eta: &Mat<S>) -> Result<(Mat<S>, Mat<S>)> {
    let id = Mat::identity(w.rows(), w.zero_elem());
    let inv = id.sub(w).inverse()?;
    let o = id.add(w).mul(&inv).scale(I);
    let z = eta.mul(&inv).scale(C64::new(0.0, 2.0));
    Ok((o.symmetrize(), z))
}

/// `Φ⁻¹(Ω, Z) = ((Ω - iI)(Ω + iI)⁻¹, Z(Ω + iI)⁻¹)`.
pub fn cayley_inverse_generic<S: Scalar>(omega: &Mat<S>, z: &Mat<S>) -> Result<(Mat<S>, Mat<S>)> {
    let ii = Mat::identity(omega.rows(), omega.zero_elem()).scale(I);
    let inv = omega.add(&ii).inverse()?;
    let w = omega.sub(&ii).mul(&inv);
    Ok((w.symmetrize(), z.mul(&inv)))
}

pub fn cayley(p: &DiskJacobiPoint) -> Result<SiegelJacobiPoint> {
    let (o, z) = cayley_generic(p.w(), p.eta())?;
    SiegelJacobiPoint::new(o, z)
}

pub fn cayley_inverse(p: &SiegelJacobiPoint) -> Result<DiskJacobiPoint> {
    let (w, e) = cayley_inverse_generic(p.omega(), p.z())?;
    DiskJacobiPoint::new(w, e)
}

/// A smooth map between charts, usable on jets of the chart coordinates.
pub trait ChartMap: Send + Sync {
    fn source(&self) -> RealChart;
    fn target(&self) -> RealChart;
    fn map_jets(&self, coords: &[Jet]) -> Result<Vec<Jet>>;

    fn map_point(&self, point: &[f64]) -> Result<Vec<f64>> {
        let jets = Jet::coordinates(point, 0);
        Ok(self.map_jets(&jets)?.iter().map(|j| j.value().re).collect())
    }
}

fn chart_of(n: usize, m: usize) -> RealChart {
    RealChart::new(n, m).expect("n >= 1")
}

impl ChartMap for JacobiElement {
    fn source(&self) -> RealChart {
        chart_of(self.n(), self.m())
    }
    fn target(&self) -> RealChart {
        self.source()
    }
    fn map_jets(&self, coords: &[Jet]) -> Result<Vec<Jet>> {
        let ch = self.source();
        let (o, z) = ch.unpack_generic(coords)?;
        let (o2, z2) = self.act_generic(&o, &z)?;
        ch.pack_generic(&o2, &z2)
    }
}

impl ChartMap for SymplecticElement {
    fn source(&self) -> RealChart {
        chart_of(self.n(), 0)
    }
    fn target(&self) -> RealChart {
        self.source()
    }
    fn map_jets(&self, coords: &[Jet]) -> Result<Vec<Jet>> {
        let ch = self.source();
        let (o, _) = ch.unpack_generic(coords)?;
        let zero = o.zero_elem();
        let l = |m: &RMat| Mat::lift_from(m, zero);
        let den = l(&self.c()).mul(&o).add(&l(&self.d())).inverse()?;
        let o2 = l(&self.a())
            .mul(&o)
            .add(&l(&self.b()))
            .mul(&den)
            .symmetrize();
        ch.pack_generic(&o2, &Mat::zeros(0, self.n(), zero))
    }
}

impl ChartMap for StarJacobiElement {
    fn source(&self) -> RealChart {
        chart_of(self.n(), self.m())
    }
    fn target(&self) -> RealChart {
        self.source()
    }
    fn map_jets(&self, coords: &[Jet]) -> Result<Vec<Jet>> {
        let ch = self.source();
        let (w, e) = ch.unpack_generic(coords)?;
        let (w2, e2) = self.act_generic(&w, &e)?;
        ch.pack_generic(&w2, &e2)
    }
}

/// `Φ: 𝔻_{n,m} → ℍ_{n,m}` on chart coordinates.
#[derive(Clone, Copy, Debug)]
pub struct CayleyMap {
    pub chart: RealChart,
}

/// `Φ⁻¹: ℍ_{n,m} → 𝔻_{n,m}` on chart coordinates.
#[derive(Clone, Copy, Debug)]
pub struct InverseCayleyMap {
    pub chart: RealChart,
}

impl ChartMap for CayleyMap {
    fn source(&self) -> RealChart {
        self.chart
    }
    fn target(&self) -> RealChart {
        self.chart
    }
    fn map_jets(&self, coords: &[Jet]) -> Result<Vec<Jet>> {
        let (w, e) = self.chart.unpack_generic(coords)?;
        let (o, z) = cayley_generic(&w, &e)?;
        self.chart.pack_generic(&o, &z)
    }
}

impl ChartMap for InverseCayleyMap {
    fn source(&self) -> RealChart {
        self.chart
    }
    fn target(&self) -> RealChart {
        self.chart
    }
    fn map_jets(&self, coords: &[Jet]) -> Result<Vec<Jet>> {
        let (o, z) = self.chart.unpack_generic(coords)?;
        let (w, e) = cayley_inverse_generic(&o, &z)?;
        self.chart.pack_generic(&w, &e)
    }
}

/// Element `([[X1, X2], [X3, -ᵗX1]], (P, Q, R))` of `𝔤^J`; `X2`, `X3`, `R` symmetric.
#[derive(Clone, Debug)]
pub struct JacobiLieElement {
    pub x1: RMat,
    pub x2: RMat,
    pub x3: RMat,
    pub p: RMat,
    pub q: RMat,
    pub r: RMat,
}

impl JacobiLieElement {
    pub fn new(x1: RMat, x2: RMat, x3: RMat, p: RMat, q: RMat, r: RMat) -> Result<Self> {
        let n = x1.rows();
        let m = p.rows();
        for (name, mat, shape) in [
            ("X1", &x1, (n, n)),
            ("X2", &x2, (n, n)),
            ("X3", &x3, (n, n)),
            ("P", &p, (m, n)),
            ("Q", &q, (m, n)),
            ("R", &r, (m, m)),
        ] {
            if mat.shape() != shape {
                return Err(Error::Shape(format!("{name} must be {shape:?}")));
            }
        }
        for (name, mat) in [("X2", &x2), ("X3", &x3), ("R", &r)] {
            if !mat.is_symmetric(1e-12 * (1.0 + mat.max_abs())) {
                return Err(Error::Invalid(format!("{name} must be symmetric")));
            }
        }
        Ok(JacobiLieElement {
            x1,
            x2,
            x3,
            p,
            q,
            r,
        })
    }

    pub fn zero(n: usize, m: usize) -> Self {
        JacobiLieElement {
            x1: RMat::real_zeros(n, n),
            x2: RMat::real_zeros(n, n),
            x3: RMat::real_zeros(n, n),
            p: RMat::real_zeros(m, n),
            q: RMat::real_zeros(m, n),
            r: RMat::real_zeros(m, m),
        }
    }

    /// The element `([[X, Y], [Y, -X]], (P, Q, 0))` of `𝔭^J`.
    pub fn from_p(x: RMat, y: RMat, p: RMat, q: RMat) -> Result<Self> {
        let m = p.rows();
        JacobiLieElement::new(x, y.clone(), y, p, q, RMat::real_zeros(m, m))
    }

    pub fn n(&self) -> usize {
        self.x1.rows()
    }

    pub fn m(&self) -> usize {
        self.p.rows()
    }

    pub fn add(&self, o: &Self) -> Self {
        JacobiLieElement {
            x1: self.x1.add(&o.x1),
            x2: self.x2.add(&o.x2),
            x3: self.x3.add(&o.x3),
            p: self.p.add(&o.p),
            q: self.q.add(&o.q),
            r: self.r.add(&o.r),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        let c = C64::new(s, 0.0);
        JacobiLieElement {
            x1: self.x1.scale(c),
            x2: self.x2.scale(c),
            x3: self.x3.scale(c),
            p: self.p.scale(c),
            q: self.q.scale(c),
            r: self.r.scale(c),
        }
    }

    /// Bracket written block-wise.
    pub fn bracket(&self, o: &Self) -> Result<Self> {
        if self.n() != o.n() || self.m() != o.m() {
            return Err(Error::Shape("Lie elements of different sizes".into()));
        }
        let (x1, y1, z1) = (&self.x1, &self.x2, &self.x3);
        let (x2, y2, z2) = (&o.x1, &o.x2, &o.x3);
        let (p1, q1) = (&self.p, &self.q);
        let (p2, q2) = (&o.p, &o.q);
        let xs = x1
            .mul(x2)
            .sub(&x2.mul(x1))
            .add(&y1.mul(z2))
            .sub(&y2.mul(z1));
        let ys = x1
            .mul(y2)
            .sub(&x2.mul(y1))
            .add(&y2.mul(&t(x1)))
            .sub(&y1.mul(&t(x2)));
        let zs = z1
            .mul(x2)
            .sub(&z2.mul(x1))
            .add(&t(x2).mul(z1))
            .sub(&t(x1).mul(z2));
        let ps = p1
            .mul(x2)
            .sub(&p2.mul(x1))
            .add(&q1.mul(z2))
            .sub(&q2.mul(z1));
        let qs = p1
            .mul(y2)
            .sub(&p2.mul(y1))
            .add(&q2.mul(&t(x1)))
            .sub(&q1.mul(&t(x2)));
        let rs = p1
            .mul(&t(q2))
            .sub(&p2.mul(&t(q1)))
            .add(&q2.mul(&t(p1)))
            .sub(&q1.mul(&t(p2)));
        Ok(JacobiLieElement {
            x1: xs,
            x2: ys,
            x3: zs,
            p: ps,
            q: qs,
            r: rs,
        })
    }

    /// Matrix of the element inside `𝔰𝔭(n+m, ℝ)`.
    pub fn embedding(&self) -> RMat {
        embed_lie(&self.x1, &self.x2, &self.x3, &self.p, &self.q, &self.r)
    }

    pub fn from_embedding(e: &RMat, n: usize, m: usize) -> Result<Self> {
        let (r1, r2, r3) = (n, n + m, 2 * n + m);
        JacobiLieElement::new(
            e.block(0, 0, n, n),
            e.block(0, r2, n, n).symmetrize(),
            e.block(r2, 0, n, n).symmetrize(),
            e.block(r1, 0, m, n),
            e.block(r1, r2, m, n),
            e.block(r1, r3, m, m).symmetrize(),
        )
    }

    /// `exp` computed in the embedding.
    pub fn exp(&self) -> Result<JacobiElement> {
        JacobiElement::from_embedding(&self.embedding().expm()?, self.n(), self.m())
    }

    pub fn is_in_p(&self, tol: f64) -> bool {
        self.x1.is_symmetric(tol)
            && self.x2.sub(&self.x3).max_abs() <= tol
            && self.r.max_abs() <= tol
    }

    pub fn is_in_k(&self, tol: f64) -> bool {
        self.x1.add(&t(&self.x1)).max_abs() <= tol
            && self.x2.add(&self.x3).max_abs() <= tol
            && self.p.max_abs() <= tol
            && self.q.max_abs() <= tol
    }

    pub fn max_abs(&self) -> f64 {
        [&self.x1, &self.x2, &self.x3, &self.p, &self.q, &self.r]
            .iter()
            .map(|m| m.max_abs())
            .fold(0.0, f64::max)
    }
}

/// `[[X1, 0, X2, ᵗQ], [P, 0, Q, R], [X3, 0, -ᵗX1, -ᵗP], [0, 0, 0, 0]]` over any scalar.
pub fn embed_lie<S: Scalar>(
    x1: &Mat<S>,
    x2: &Mat<S>,
    x3: &Mat<S>,
    p: &Mat<S>,
    q: &Mat<S>,
    r: &Mat<S>,
) -> Mat<S> {
    let n = x1.rows();
    let m = p.rows();
    let (r1, r2, r3) = (n, n + m, 2 * n + m);
    let mut e = Mat::zeros(2 * (n + m), 2 * (n + m), x1.zero_elem());
    e.set_block(0, 0, x1);
    e.set_block(0, r2, x2);
    e.set_block(0, r3, &q.transpose());
    e.set_block(r1, 0, p);
    e.set_block(r1, r2, q);
    e.set_block(r1, r3, r);
    e.set_block(r2, 0, x3);
    e.set_block(r2, r2, &x1.transpose().neg());
    e.set_block(r2, r3, &p.transpose().neg());
    e
}

/// Element `([[A, -B], [B, A]], (0, 0; κ))` of `K^J`; `A + iB` unitary, `κ` symmetric.
#[derive(Clone, Debug)]
pub struct StabilizerElement {
    pub a: RMat,
    pub b: RMat,
    pub kappa: RMat,
}

impl StabilizerElement {
    pub fn new(a: RMat, b: RMat, kappa: RMat) -> Result<Self> {
        let u = CMat::from_parts(&a, &b)?;
        let n = u.rows();
        let defect = u
            .adjoint()
            .mul(&u)
            .sub(&CMat::complex_identity(n))
            .max_abs();
        if defect > 1e-9 {
            return Err(Error::Invalid(format!(
                "A + iB is not unitary (defect {defect:e})"
            )));
        }
        if !kappa.is_symmetric(1e-12 * (1.0 + kappa.max_abs())) {
            return Err(Error::Invalid("κ must be symmetric".into()));
        }
        Ok(StabilizerElement { a, b, kappa })
    }

    pub fn from_unitary(u: &CMat, kappa: RMat) -> Result<Self> {
        StabilizerElement::new(u.real_part(), u.imag_part(), kappa)
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn m(&self) -> usize {
        self.kappa.rows()
    }

    pub fn unitary(&self) -> CMat {
        CMat::from_parts(&self.a, &self.b).expect("shapes checked")
    }

    pub fn to_jacobi(&self) -> JacobiElement {
        let (n, m) = (self.n(), self.m());
        let sp = SymplecticElement::from_blocks(&self.a, &self.b.neg(), &self.b, &self.a)
            .expect("unitary blocks are symplectic");
        let heis = HeisenbergElement {
            lambda: RMat::real_zeros(m, n),
            mu: RMat::real_zeros(m, n),
            kappa: self.kappa.clone(),
        };
        JacobiElement { sp, heis }
    }
}

/// `Ad(k)α` on `𝔭^J` written block-wise.
pub fn adjoint_action_k(
    k: &StabilizerElement,
    alpha: &JacobiLieElement,
) -> Result<JacobiLieElement> {
    if !alpha.is_in_p(1e-10 * (1.0 + alpha.max_abs())) {
        return Err(Error::Invalid("α is not in 𝔭^J".into()));
    }
    if k.n() != alpha.n() {
        return Err(Error::Shape(
            "stabilizer and Lie element differ in n".into(),
        ));
    }
    let (a, b) = (&k.a, &k.b);
    let (x, y) = (&alpha.x1, &alpha.x2);
    let (p, q) = (&alpha.p, &alpha.q);
    let xs = a.mul(x).mul(&t(a)).sub(
        &b.mul(x)
            .mul(&t(b))
            .add(&b.mul(y).mul(&t(a)))
            .add(&a.mul(y).mul(&t(b))),
    );
    let ys = a
        .mul(x)
        .mul(&t(b))
        .add(&a.mul(y).mul(&t(a)))
        .add(&b.mul(x).mul(&t(a)))
        .sub(&b.mul(y).mul(&t(b)));
    let ps = p.mul(&t(a)).sub(&q.mul(&t(b)));
    let qs = p.mul(&t(b)).add(&q.mul(&t(a)));
    JacobiLieElement::from_p(xs, ys, ps, qs)
}

/// `Φ(α) = (X + iY, P + iQ)` on `𝔭^J`.
pub fn phi_map(alpha: &JacobiLieElement) -> Result<(CMat, CMat)> {
    if !alpha.is_in_p(1e-10 * (1.0 + alpha.max_abs())) {
        return Err(Error::Invalid("α is not in 𝔭^J".into()));
    }
    Ok((
        CMat::from_parts(&alpha.x1, &alpha.x2)?,
        CMat::from_parts(&alpha.p, &alpha.q)?,
    ))
}

/// `θ(k) = (A + iB, κ)`.
pub fn theta_map(k: &StabilizerElement) -> (CMat, RMat) {
    (k.unitary(), k.kappa.clone())
}

/// `(h, κ)·(ω, z) = (hωᵗh, zᵗh)`.
pub fn unitary_action_generic<S: Scalar>(h: &CMat, omega: &Mat<S>, z: &Mat<S>) -> (Mat<S>, Mat<S>) {
    let hh = Mat::lift_from(h, omega.zero_elem());
    let ht = hh.transpose();
    (hh.mul(omega).mul(&ht), z.mul(&ht))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn inverse_is_two_sided() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = sample::random_jacobi(2, 1, &mut rng, 0.5).unwrap();
        let e = JacobiElement::identity(2, 1);
        assert!(g.mul(&g.inverse()).unwrap().distance(&e) < 1e-12);
        assert!(g.inverse().mul(&g).unwrap().distance(&e) < 1e-12);
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for (n, m) in [(1, 1), (2, 1), (1, 2)] {
            let g = sample::random_jacobi(n, m, &mut rng, 0.5).unwrap();
            let h = sample::random_jacobi(n, m, &mut rng, 0.5).unwrap();
            let lhs = g.mul(&h).unwrap().embedding();
            let rhs = g.embedding().mul(&h.embedding());
            assert!(lhs.sub(&rhs).max_abs() < 1e-12, "n={n} m={m}");
            let j = standard_j(n + m);
            let e = lhs;
            assert!(t(&e).mul(&j).mul(&e).sub(&j).max_abs() < 1e-10);
        }
    }

    #[test]
    fn action_is_a_left_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = sample::random_jacobi(2, 2, &mut rng, 0.5).unwrap();
        let h = sample::random_jacobi(2, 2, &mut rng, 0.5).unwrap();
        let p = sample::random_siegel_jacobi_point(2, 2, &mut rng).unwrap();
        let a = g.act(&h.act(&p).unwrap()).unwrap();
        let b = g.mul(&h).unwrap().act(&p).unwrap();
        assert!(a.omega().max_dist(b.omega()) < 1e-10);
        assert!(a.z().max_dist(b.z()) < 1e-10);
    }

    #[test]
    fn bracket_matches_matrix_commutator() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for (n, m) in [(1, 1), (2, 1), (2, 3)] {
            let a = sample::random_lie_element(n, m, &mut rng);
            let b = sample::random_lie_element(n, m, &mut rng);
            let (ea, eb) = (a.embedding(), b.embedding());
            let comm = ea.mul(&eb).sub(&eb.mul(&ea));
            let br = a.bracket(&b).unwrap().embedding();
            assert!(comm.sub(&br).max_abs() < 1e-12, "n={n} m={m}");
        }
    }

    #[test]
    fn adjoint_action_matches_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (n, m) in [(1, 1), (2, 2)] {
            let k = sample::random_stabilizer(n, m, &mut rng).unwrap();
            let alpha = sample::random_p_element(n, m, &mut rng);
            let ek = k.to_jacobi().embedding();
            let conj = ek.mul(&alpha.embedding()).mul(&ek.inverse().unwrap());
            let ad = adjoint_action_k(&k, &alpha).unwrap().embedding();
            assert!(conj.sub(&ad).max_abs() < 1e-12);
        }
    }

    #[test]
    fn star_conjugation_is_a_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let g = sample::random_jacobi(2, 1, &mut rng, 0.5).unwrap();
        let h = sample::random_jacobi(2, 1, &mut rng, 0.5).unwrap();
        let lhs = star_conjugate(&g.mul(&h).unwrap());
        let rhs = star_conjugate(&g).mul(&star_conjugate(&h)).unwrap();
        assert!(lhs.p.max_dist(&rhs.p) < 1e-12);
        assert!(lhs.q.max_dist(&rhs.q) < 1e-12);
        assert!(lhs.xi.max_dist(&rhs.xi) < 1e-12);
        assert!(lhs.kappa.sub(&rhs.kappa).max_abs() < 1e-12);
    }

    #[test]
    fn cayley_intertwines_actions() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = sample::random_jacobi(2, 1, &mut rng, 0.5).unwrap();
        let p = sample::random_disk_point(2, 1, &mut rng).unwrap();
        let lhs = cayley(&star_conjugate(&g).act(&p).unwrap()).unwrap();
        let rhs = g.act(&cayley(&p).unwrap()).unwrap();
        assert!(lhs.omega().max_dist(rhs.omega()) < 1e-10);
        assert!(lhs.z().max_dist(rhs.z()) < 1e-10);
    }

    #[test]
    fn stabilizer_fixes_base_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let k = sample::random_stabilizer(2, 2, &mut rng).unwrap();
        let o = SiegelJacobiPoint::base(2, 2);
        let p = k.to_jacobi().act(&o).unwrap();
        assert!(p.omega().max_dist(o.omega()) < 1e-12);
        assert!(p.z().max_abs() < 1e-12);
    }

    #[test]
    fn non_symplectic_is_rejected() {
        let mut m = RMat::real_identity(2);
        m[(0, 0)] = 2.0;
        assert!(matches!(
            SymplecticElement::new(m),
            Err(Error::NotSymplectic(_))
        ));
    }
}
