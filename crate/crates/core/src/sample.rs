//! Random points, group elements and Lie algebra elements for trials.

use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::groups::{
    HeisenbergElement, JacobiElement, JacobiLieElement, StabilizerElement, StarJacobiElement,
    SymplecticElement,
};
use crate::linalg::{CMat, DiskJacobiPoint, Mat, RMat, SiegelJacobiPoint, SiegelPoint};

fn uniform<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random_range(-1.0..1.0)
}

pub fn random_real<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> RMat {
    Mat::from_fn(rows, cols, &0.0, |_, _| uniform(rng))
}

/// Symmetric with entries uniform in `[-1, 1]`.
pub fn random_symmetric<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RMat {
    let mut m = RMat::real_zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = uniform(rng);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

/// `X` symmetric uniform, `Y = 0.1 I + ᵗG G` with `G` uniform.
pub fn random_siegel_point<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<SiegelPoint> {
    let x = random_symmetric(n, rng);
    let g = random_real(n, n, rng);
    let y = g
        .transpose()
        .mul(&g)
        .add(&RMat::real_identity(n).scale(C64::new(0.1, 0.0)));
    SiegelPoint::new(CMat::from_parts(&x, &y)?)
}

/// Siegel part as in [`random_siegel_point`], `Z` uniform in the unit complex box.
pub fn random_siegel_jacobi_point<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    rng: &mut R,
) -> Result<SiegelJacobiPoint> {
    let sp = random_siegel_point(n, rng)?;
    let z = CMat::from_parts(&random_real(m, n, rng), &random_real(m, n, rng))?;
    SiegelJacobiPoint::new(sp.omega().clone(), z)
}

/// `Φ⁻¹` of a random point of ℍ_{n,m}.
pub fn random_disk_point<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    rng: &mut R,
) -> Result<DiskJacobiPoint> {
    crate::groups::cayley_inverse(&random_siegel_jacobi_point(n, m, rng)?)
}

/// `[[X1, X2], [X3, -ᵗX1]]` with uniform entries.
pub fn random_sp_algebra<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RMat {
    let x1 = random_real(n, n, rng);
    let x2 = random_symmetric(n, rng);
    let x3 = random_symmetric(n, rng);
    Mat::from_blocks(&[vec![&x1, &x2], vec![&x3, &x1.transpose().neg()]]).expect("blocks conform")
}

/// `exp(scale · X)` for a random `X ∈ 𝔰𝔭(n)`.
pub fn random_symplectic<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
    scale: f64,
) -> Result<SymplecticElement> {
    let x = random_sp_algebra(n, rng).scale(C64::new(scale, 0.0));
    SymplecticElement::new(x.expm()?)
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases of `R` removed.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMat {
    let mut cols: Vec<Vec<C64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect()
        })
        .collect();
    for j in 0..n {
        for k in 0..j {
            let proj: C64 = (0..n).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            let ck = cols[k].clone();
            for (x, v) in cols[j].iter_mut().zip(&ck) {
                *x -= proj * v;
            }
        }
        let norm = cols[j].iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        for c in cols[j].iter_mut() {
            *c /= norm;
        }
    }
    // Gram-Schmidt leaves R with a positive real diagonal, so no phase correction is needed.
    Mat::from_fn(n, n, &C64::new(0.0, 0.0), |i, j| cols[j][i])
}

/// `(λ, μ; κ)` with `λ, μ` uniform and `κ = S - μᵗλ` for a random symmetric `S`.
pub fn random_heisenberg<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> HeisenbergElement {
    let lambda = random_real(m, n, rng);
    let mu = random_real(m, n, rng);
    let kappa = random_symmetric(m, rng).sub(&mu.mul(&lambda.transpose()));
    HeisenbergElement { lambda, mu, kappa }
}

pub fn random_jacobi<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    rng: &mut R,
    scale: f64,
) -> Result<JacobiElement> {
    let sp = random_symplectic(n, rng, scale)?;
    let heis = random_heisenberg(n, m, rng);
    JacobiElement::new(sp, heis)
}

pub fn random_star_jacobi<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    rng: &mut R,
    scale: f64,
) -> Result<StarJacobiElement> {
    Ok(crate::groups::star_conjugate(&random_jacobi(
        n, m, rng, scale,
    )?))
}

pub fn random_stabilizer<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    rng: &mut R,
) -> Result<StabilizerElement> {
    let u = random_unitary(n, rng);
    StabilizerElement::from_unitary(&u, random_symmetric(m, rng))
}

pub fn random_lie_element<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> JacobiLieElement {
    JacobiLieElement {
        x1: random_real(n, n, rng),
        x2: random_symmetric(n, rng),
        x3: random_symmetric(n, rng),
        p: random_real(m, n, rng),
        q: random_real(m, n, rng),
        r: random_symmetric(m, rng),
    }
}

pub fn random_p_element<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> JacobiLieElement {
    let x = random_symmetric(n, rng);
    let y = random_symmetric(n, rng);
    JacobiLieElement::from_p(x, y, random_real(m, n, rng), random_real(m, n, rng))
        .expect("symmetric blocks")
}

/// Random element of `T_n × ℂ^{(m,n)}`.
pub fn random_tnm<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> (CMat, CMat) {
    let w = CMat::from_parts(&random_symmetric(n, rng), &random_symmetric(n, rng)).expect("shapes");
    let z = CMat::from_parts(&random_real(m, n, rng), &random_real(m, n, rng)).expect("shapes");
    (w, z)
}
