//! The Helgason map from `U(n)`-invariant polynomials on `T_{n,m}` to
//! `G^J`-invariant differential operators on `ℍ_{n,m}`, evaluated pointwise.
//!
//! `(Θ(P)f)(g·o) = P(∂/∂t) f(g exp(Σ t_α η_α)·o)` at `t = 0`, with `o = (iI, 0)`.
//! The curve is expanded as a jet in `t`; each monomial `t^β` of `P` picks out
//! `β!` times the matching coefficient.

use num_complex::Complex64 as C64;

use crate::chart::RealChart;
use crate::error::{Error, Result};
use crate::groups::{
    embed_lie, HeisenbergElement, JacobiBlocks, JacobiElement, JacobiLieElement, SymplecticElement,
};
use crate::invariants::InvariantPolynomial;
use crate::jet::Jet;
use crate::linalg::{Mat, RMat};
use crate::operators::DifferentialOperator;
use crate::scalar::Scalar;
use crate::testfn::ChartFunction;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Basis `η_α` of `𝔭^J` aligned with the chart coordinates and orthonormal for
/// `Re tr(ωω̄') + Re tr(z ᵗz̄')` under `Φ(α) = (X + iY, P + iQ)`.
///
/// Diagonal and rectangular directions map to chart unit directions; an
/// off-diagonal symmetric direction maps to `1/√2` times one.
#[derive(Clone, Debug)]
pub struct PJBasis {
    chart: RealChart,
    weights: Vec<f64>,
}

impl PJBasis {
    pub fn new(chart: RealChart) -> Self {
        let (n, m) = (chart.n(), chart.m());
        let mut weights = vec![1.0; chart.dim()];
        for i in 0..n {
            for j in i + 1..n {
                weights[chart.x(i, j)] = FRAC_1_SQRT_2;
                weights[chart.y(i, j)] = FRAC_1_SQRT_2;
            }
        }
        debug_assert_eq!(weights.len(), chart.sym_len() * 2 + 2 * m * n);
        PJBasis { chart, weights }
    }

    pub fn chart(&self) -> RealChart {
        self.chart
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `Φ(η_α) = weight(α) ·` (unit direction `α` of the chart).
    pub fn weight(&self, alpha: usize) -> f64 {
        self.weights[alpha]
    }

    /// `Φ(Σ t_α η_α)` as a pair `(ω, z)` over any scalar.
    pub fn phi<S: Scalar>(&self, t: &[S]) -> Result<(Mat<S>, Mat<S>)> {
        if t.len() != self.len() {
            return Err(Error::Shape(format!(
                "{} coefficients for a basis of size {}",
                t.len(),
                self.len()
            )));
        }
        let scaled: Vec<S> = t
            .iter()
            .zip(&self.weights)
            .map(|(s, w)| s.scale(C64::new(*w, 0.0)))
            .collect();
        self.chart.unpack_generic(&scaled)
    }

    /// `Σ t_α η_α` as the four `𝔭^J` blocks `(X, Y, P, Q)`.
    pub fn blocks<S: Scalar>(&self, t: &[S]) -> Result<[Mat<S>; 4]> {
        let (omega, z) = self.phi(t)?;
        Ok([omega.re(), omega.im(), z.re(), z.im()])
    }

    /// The element `η_α` itself.
    pub fn element(&self, alpha: usize) -> Result<JacobiLieElement> {
        let mut t = vec![0.0; self.len()];
        t[alpha] = 1.0;
        let [x, y, p, q] = self.blocks(&t)?;
        JacobiLieElement::from_p(x, y, p, q)
    }
}

/// An element of `𝔤^J` whose block entries are jets.
#[derive(Clone, Debug)]
pub struct JetLieElement {
    pub x1: Mat<Jet>,
    pub x2: Mat<Jet>,
    pub x3: Mat<Jet>,
    pub p: Mat<Jet>,
    pub q: Mat<Jet>,
    pub r: Mat<Jet>,
}

/// A group element with jet entries, kept as its `Sp(n+m, ℝ)` embedding.
#[derive(Clone, Debug)]
pub struct JetJacobiElement {
    n: usize,
    m: usize,
    embedding: Mat<Jet>,
}

impl JetJacobiElement {
    pub fn embedding(&self) -> &Mat<Jet> {
        &self.embedding
    }

    pub fn blocks(&self) -> Result<JacobiBlocks<Jet>> {
        JacobiBlocks::from_embedding(&self.embedding, self.n, self.m)
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        Ok(JetJacobiElement {
            n: self.n,
            m: self.m,
            embedding: self.embedding.try_mul(&o.embedding)?,
        })
    }

    /// The element obtained by dropping all non-constant jet terms.
    pub fn value(&self) -> Result<JacobiElement> {
        JacobiElement::from_embedding(&self.embedding.value().real_part(), self.n, self.m)
    }

    /// Largest coefficient of `self - identity` over all entries.
    pub fn distance_to_identity(&self) -> f64 {
        let id = Mat::identity(self.embedding.rows(), self.embedding.zero_elem());
        self.embedding.sub(&id).max_abs()
    }
}

/// `exp(α)` through the `2(n+m)` embedding. The series is exact to the jet
/// order because every entry has zero constant term.
pub fn jacobi_exp(alpha: &JetLieElement) -> Result<JetJacobiElement> {
    let n = alpha.x1.rows();
    let m = alpha.p.rows();
    let e = embed_lie(
        &alpha.x1, &alpha.x2, &alpha.x3, &alpha.p, &alpha.q, &alpha.r,
    );
    let mut order = 0;
    for j in e.data() {
        if j.value().norm() != 0.0 {
            return Err(Error::Invalid(
                "Lie element has a nonzero constant term".into(),
            ));
        }
        order = order.max(j.order());
    }
    Ok(JetJacobiElement {
        n,
        m,
        embedding: e.exp_series(order)?,
    })
}

/// `t ↦ Σ t_α η_α` as a jet-valued Lie element, jets of the given order in `t`.
pub fn basis_curve(basis: &PJBasis, order: usize) -> Result<JetLieElement> {
    let t = Jet::coordinates(&vec![0.0; basis.len()], order);
    let [x, y, p, q] = basis.blocks(&t)?;
    let m = basis.chart().m();
    let r = Mat::zeros(m, m, x.zero_elem());
    Ok(JetLieElement {
        x1: x,
        x2: y.clone(),
        x3: y,
        p,
        q,
        r,
    })
}

/// Some `g` with `g·(iI, 0)` equal to the given chart point:
/// `M = [[L, X ᵗL⁻¹], [0, ᵗL⁻¹]]` with `LᵗL = Y`, `λ = V ᵗL⁻¹`, `μ = U ᵗL⁻¹`.
pub fn jacobi_from_point(chart: RealChart, point: &[f64]) -> Result<JacobiElement> {
    let (omega, z) = chart.unpack(point)?;
    let (x, y) = (omega.real_part(), omega.imag_part());
    let l = y
        .cholesky()
        .ok_or_else(|| Error::Domain("Im Ω is not positive definite".into()))?;
    let lt_inv = l.transpose().inverse()?;
    let n = chart.n();
    let sp = SymplecticElement::from_blocks(&l, &x.mul(&lt_inv), &RMat::real_zeros(n, n), &lt_inv)?;
    let lambda = z.imag_part().mul(&lt_inv);
    let mu = z.real_part().mul(&lt_inv);
    // κ only has to make κ + μᵗλ symmetric; it does not move the point
    let ml = mu.mul(&lambda.transpose());
    let kappa = ml.transpose().sub(&ml).scale(C64::new(0.5, 0.0));
    let heis = HeisenbergElement::new(lambda, mu, kappa)?;
    JacobiElement::new(sp, heis)
}

fn multi_factorial(exps: &[u8]) -> f64 {
    exps.iter()
        .map(|&e| (1..=e as u32).map(f64::from).product::<f64>())
        .product()
}

/// `(Θ(P)f)(g·(iI, 0))`, with jets of order `order` (at least `deg P`).
pub fn helgason_apply(
    poly: &InvariantPolynomial,
    f: &dyn ChartFunction,
    g: &JacobiElement,
    order: usize,
) -> Result<C64> {
    if order < poly.degree {
        return Err(Error::JetOrder {
            have: order,
            need: poly.degree,
        });
    }
    let chart = RealChart::new(g.n(), g.m())?;
    let basis = PJBasis::new(chart);
    let t = Jet::coordinates(&vec![0.0; basis.len()], poly.degree);
    let (omega_t, z_t) = basis.phi(&t)?;
    let p_jet = poly.evaluate(&omega_t, &z_t)?;
    helgason_apply_jet(&p_jet, f, g, &basis)
}

/// As `helgason_apply`, with the polynomial already expanded as a jet in the
/// basis coordinates `t`.
pub fn helgason_apply_jet(
    p_jet: &Jet,
    f: &dyn ChartFunction,
    g: &JacobiElement,
    basis: &PJBasis,
) -> Result<C64> {
    if p_jet.nvars() != basis.len() {
        return Err(Error::JetVars(p_jet.nvars(), basis.len()));
    }
    let order = p_jet.order();
    let chart = basis.chart();
    let curve = jacobi_exp(&basis_curve(basis, order)?)?.blocks()?;
    let zero = Jet::zero(basis.len(), order);
    let mut base = Mat::identity(chart.n(), &zero);
    base = base.scale(C64::new(0.0, 1.0));
    let (o1, z1) = curve.act(&base, &Mat::zeros(chart.m(), chart.n(), &zero))?;
    let (o2, z2) = g.act_generic(&o1, &z1)?;
    let coords = chart.pack_generic(&o2, &z2)?;
    let fj = f.jet(&coords)?;
    let space = p_jet.space().clone();
    let mut acc = C64::new(0.0, 0.0);
    for (idx, c) in p_jet.coeffs().iter().enumerate() {
        if *c == C64::new(0.0, 0.0) {
            continue;
        }
        let exps = space.exponents(idx);
        acc += c * fj.coeff(exps) * multi_factorial(exps);
    }
    Ok(acc)
}

/// `(Θ(P)f)(p)` at a chart point.
pub fn helgason_at_point(
    poly: &InvariantPolynomial,
    f: &dyn ChartFunction,
    chart: RealChart,
    point: &[f64],
) -> Result<C64> {
    let g = jacobi_from_point(chart, point)?;
    helgason_apply(poly, f, &g, poly.degree)
}

/// Least-squares `c` with `a ≈ c·b`, and the worst relative residual.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstantFit {
    pub constant: C64,
    pub residual: f64,
}

pub fn fit_constant(a: &[C64], b: &[C64]) -> Result<ConstantFit> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::Invalid(
            "fit needs two equal, nonempty samples".into(),
        ));
    }
    let den: f64 = b.iter().map(|x| x.norm_sqr()).sum();
    if den == 0.0 {
        return Err(Error::Singular(
            "reference operator vanishes on every sample".into(),
        ));
    }
    let num: C64 = a.iter().zip(b).map(|(x, y)| x * y.conj()).sum();
    let c = num / den;
    let residual = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - c * y).norm() / (1.0 + x.norm()))
        .fold(0.0, f64::max);
    Ok(ConstantFit {
        constant: c,
        residual,
    })
}

/// Fits `Θ(P) ≈ c·D` over the given test functions and points.
pub fn fit_against(
    poly: &InvariantPolynomial,
    reference: &DifferentialOperator,
    samples: &[(&dyn ChartFunction, Vec<f64>)],
) -> Result<ConstantFit> {
    let chart = reference.chart();
    let mut a = Vec::with_capacity(samples.len());
    let mut b = Vec::with_capacity(samples.len());
    for (f, p) in samples {
        a.push(helgason_at_point(poly, *f, chart, p)?);
        b.push(reference.evaluate(p, *f)?);
    }
    fit_constant(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{basic_generators, generators_11};
    use crate::operators::{d_operators_11, siegel_trace_form};
    use crate::sample;
    use crate::testfn::random_test_function;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn point_representative_reaches_the_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for (n, m) in [(1, 1), (2, 1), (2, 2)] {
            let chart = RealChart::new(n, m).unwrap();
            let p = sample::random_siegel_jacobi_point(n, m, &mut rng).unwrap();
            let coords = chart.pack(p.omega(), p.z()).unwrap();
            let g = jacobi_from_point(chart, &coords).unwrap();
            let back = crate::groups::ChartMap::map_point(&g, &vec_base(chart)).unwrap();
            let err = back
                .iter()
                .zip(&coords)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            assert!(err < 1e-12, "n={n} m={m}: {err}");
        }
    }

    fn vec_base(chart: RealChart) -> Vec<f64> {
        let mut v = vec![0.0; chart.dim()];
        for i in 0..chart.n() {
            v[chart.y(i, i)] = 1.0;
        }
        v
    }

    #[test]
    fn exp_of_negative_is_inverse() {
        let basis = PJBasis::new(RealChart::new(2, 1).unwrap());
        let a = basis_curve(&basis, 3).unwrap();
        let neg = JetLieElement {
            x1: a.x1.neg(),
            x2: a.x2.neg(),
            x3: a.x3.neg(),
            p: a.p.neg(),
            q: a.q.neg(),
            r: a.r.neg(),
        };
        let prod = jacobi_exp(&a)
            .unwrap()
            .mul(&jacobi_exp(&neg).unwrap())
            .unwrap();
        assert!(prod.distance_to_identity() < 1e-13);
    }

    #[test]
    fn theta_of_q_on_upper_half_plane() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let chart = RealChart::new(1, 0).unwrap();
        let q = &basic_generators(1, 0)[0];
        let lap = siegel_trace_form(1).unwrap().scale(C64::new(16.0, 0.0));
        for _ in 0..5 {
            let f = random_test_function(&chart, &mut rng);
            let p = sample::random_siegel_point(1, &mut rng).unwrap();
            let coords = chart
                .pack(p.omega(), &Mat::zeros(0, 1, &C64::new(0.0, 0.0)))
                .unwrap();
            let a = helgason_at_point(q, &f, chart, &coords).unwrap();
            let b = lap.evaluate(&coords, &f).unwrap();
            assert!((a - b).norm() < 1e-8 * (1.0 + b.norm()), "{a} vs {b}");
        }
    }

    #[test]
    fn theta_11_against_d_operators() {
        // even generators land on D₁, D₂; the odd ones on -D₃, -D₄
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let chart = RealChart::new(1, 1).unwrap();
        let d = d_operators_11();
        let signs = [1.0, 1.0, -1.0, -1.0];
        for ((poly, op), sign) in generators_11().iter().zip(d.iter()).zip(signs) {
            let f = random_test_function(&chart, &mut rng);
            let coords = vec![0.3, 1.4, -0.2, 0.5];
            let a = helgason_at_point(poly, &f, chart, &coords).unwrap();
            let b = op.evaluate(&coords, &f).unwrap() * sign;
            assert!(
                (a - b).norm() < 1e-8 * (1.0 + b.norm()),
                "{}: {a} vs {b}",
                poly.name
            );
        }
    }
}
