//! Dense matrices over any [`Scalar`] and validated points of ℍ_n, ℍ_{n,m} and 𝔻_{n,m}.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major matrix. `zero` is a constant of the ambient scalar space, kept so
/// that empty and freshly built matrices know which jet space they live in.
#[derive(Clone)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
    zero: S,
}

pub type CMat = Mat<C64>;
pub type RMat = Mat<f64>;

impl<S: PartialEq> PartialEq for Mat<S> {
    fn eq(&self, o: &Self) -> bool {
        self.rows == o.rows && self.cols == o.cols && self.data == o.data
    }
}

impl<S: Scalar> fmt::Debug for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{:?} ", self[(i, j)].value())?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<S> Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<S: Scalar> Mat<S> {
    pub fn from_fn(
        rows: usize,
        cols: usize,
        zero: &S,
        mut f: impl FnMut(usize, usize) -> S,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat {
            rows,
            cols,
            data,
            zero: zero.zero_like(),
        }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>, zero: &S) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat {
            rows,
            cols,
            data,
            zero: zero.zero_like(),
        })
    }

    pub fn zeros(rows: usize, cols: usize, zero: &S) -> Self {
        let z = zero.zero_like();
        Mat {
            rows,
            cols,
            data: vec![z.clone(); rows * cols],
            zero: z,
        }
    }

    pub fn identity(n: usize, zero: &S) -> Self {
        let one = zero.one_like();
        let mut m = Mat::zeros(n, n, zero);
        for i in 0..n {
            m[(i, i)] = one.clone();
        }
        m
    }

    /// Converts a numeric matrix into the ambient space of `zero`.
    pub fn lift_from<T: Scalar>(src: &Mat<T>, zero: &S) -> Self {
        Mat::from_fn(src.rows, src.cols, zero, |i, j| {
            zero.lift(src[(i, j)].value())
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn zero_elem(&self) -> &S {
        &self.zero
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn map<T: Scalar>(&self, zero: &T, f: impl Fn(&S) -> T) -> Mat<T> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            zero: zero.zero_like(),
        }
    }

    fn map_same(&self, f: impl Fn(&S) -> S) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            zero: self.zero.clone(),
        }
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, &self.zero, |i, j| {
            self[(j, i)].clone()
        })
    }

    pub fn conj(&self) -> Self {
        self.map_same(|x| x.conj())
    }

    pub fn re(&self) -> Self {
        self.map_same(|x| x.re())
    }

    pub fn im(&self) -> Self {
        self.map_same(|x| x.im())
    }

    pub fn scale(&self, c: C64) -> Self {
        self.map_same(|x| x.scale(c))
    }

    pub fn neg(&self) -> Self {
        self.map_same(|x| -x.clone())
    }

    /// Constant terms.
    pub fn value(&self) -> CMat {
        self.map(&C64::new(0.0, 0.0), |x| x.value())
    }

    fn check_same(&self, other: &Self, op: &str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!(
                "{op} of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other, "sum")?;
        Ok(self.add(other))
    }

    /// Entry-wise sum; panics on shape mismatch.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
            zero: self.zero.clone(),
        }
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other, "difference")?;
        Ok(self.sub(other))
    }

    /// Entry-wise difference; panics on shape mismatch.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(
            self.shape(),
            other.shape(),
            "matrix difference shape mismatch"
        );
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
            zero: self.zero.clone(),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul(other))
    }

    /// Matrix product; panics on shape mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        Mat::from_fn(self.rows, other.cols, &self.zero, |i, j| {
            let mut acc = self.zero.clone();
            for k in 0..self.cols {
                acc = acc + self[(i, k)].clone() * other[(k, j)].clone();
            }
            acc
        })
    }

    pub fn trace(&self) -> S {
        let mut acc = self.zero.clone();
        for i in 0..self.rows.min(self.cols) {
            acc = acc + self[(i, i)].clone();
        }
        acc
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(
            r0 + rows <= self.rows && c0 + cols <= self.cols,
            "block out of range"
        );
        Mat::from_fn(rows, cols, &self.zero, |i, j| {
            self[(r0 + i, c0 + j)].clone()
        })
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        assert!(
            r0 + b.rows <= self.rows && c0 + b.cols <= self.cols,
            "block out of range"
        );
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    /// Assembles a block matrix; every block row must share a height and every block column a width.
    pub fn from_blocks(blocks: &[Vec<&Self>]) -> Result<Self> {
        let heights: Vec<usize> = blocks.iter().map(|r| r[0].rows).collect();
        let widths: Vec<usize> = blocks[0].iter().map(|b| b.cols).collect();
        for (bi, row) in blocks.iter().enumerate() {
            if row.len() != widths.len() {
                return Err(Error::Shape("ragged block rows".into()));
            }
            for (bj, b) in row.iter().enumerate() {
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(Error::Shape(format!("block ({bi},{bj}) does not conform")));
                }
            }
        }
        let zero = blocks[0][0].zero.clone();
        let mut out = Mat::zeros(heights.iter().sum(), widths.iter().sum(), &zero);
        let mut r0 = 0;
        for (bi, row) in blocks.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                out.set_block(r0, c0, b);
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        Ok(out)
    }

    pub fn symmetrize(&self) -> Self {
        let t = self.transpose();
        self.add(&t).scale(C64::new(0.5, 0.0))
    }

    /// Largest entry modulus of the constant terms.
    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|x| x.value().norm())
            .fold(0.0, f64::max)
    }

    /// Gauss-Jordan inverse with partial pivoting on constant-term modulus.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "inverse of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let scale = self.max_abs().max(1e-300);
        let mut a = self.clone();
        let mut inv = Mat::identity(n, &self.zero);
        for col in 0..n {
            let (piv, pmag) =
                (col..n)
                    .map(|r| (r, a[(r, col)].value().norm()))
                    .fold(
                        (col, -1.0),
                        |best, cur| if cur.1 > best.1 { cur } else { best },
                    );
            if pmag <= 1e-14 * scale {
                return Err(Error::Singular(format!("pivot {pmag:e} in column {col}")));
            }
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                    inv.data.swap(piv * n + j, col * n + j);
                }
            }
            let p = a[(col, col)].recip()?;
            for j in 0..n {
                a[(col, j)] = a[(col, j)].clone() * p.clone();
                inv[(col, j)] = inv[(col, j)].clone() * p.clone();
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a[(r, j)] = a[(r, j)].clone() - f.clone() * a[(col, j)].clone();
                    inv[(r, j)] = inv[(r, j)].clone() - f.clone() * inv[(col, j)].clone();
                }
            }
        }
        Ok(inv)
    }

    /// Determinant by elimination; exact cofactor expansion for n <= 3.
    pub fn det(&self) -> Result<S> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "determinant of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let e = |i: usize, j: usize| self[(i, j)].clone();
        match n {
            0 => Ok(self.zero.one_like()),
            1 => Ok(e(0, 0)),
            2 => Ok(e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0)),
            3 => Ok(e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1))
                - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
                + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))),
            _ => {
                let mut a = self.clone();
                let mut det = self.zero.one_like();
                for col in 0..n {
                    let (piv, pmag) = (col..n).map(|r| (r, a[(r, col)].value().norm())).fold(
                        (col, -1.0),
                        |best, cur| if cur.1 > best.1 { cur } else { best },
                    );
                    if pmag == 0.0 {
                        return Ok(self.zero.zero_like());
                    }
                    if piv != col {
                        for j in 0..n {
                            a.data.swap(piv * n + j, col * n + j);
                        }
                        det = -det;
                    }
                    let p = a[(col, col)].clone();
                    let pinv = p.recip()?;
                    det = det * p;
                    for r in col + 1..n {
                        let f = a[(r, col)].clone() * pinv.clone();
                        for j in col..n {
                            a[(r, j)] = a[(r, j)].clone() - f.clone() * a[(col, j)].clone();
                        }
                    }
                }
                Ok(det)
            }
        }
    }

    /// Truncated exponential series `Σ_{k<=terms} M^k / k!`; exact for nilpotent jet matrices.
    pub fn exp_series(&self, terms: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("exponential of a non-square matrix".into()));
        }
        let mut acc = Mat::identity(self.rows, &self.zero);
        let mut term = acc.clone();
        for k in 1..=terms {
            term = term.mul(self).scale(C64::new(1.0 / k as f64, 0.0));
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

impl RMat {
    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Shape("ragged rows".into()));
            }
            data.extend_from_slice(row);
        }
        Mat::from_vec(r, c, data, &0.0)
    }

    pub fn real_zeros(rows: usize, cols: usize) -> Self {
        Mat::zeros(rows, cols, &0.0)
    }

    pub fn real_identity(n: usize) -> Self {
        Mat::identity(n, &0.0)
    }

    pub fn to_complex(&self) -> CMat {
        Mat::lift_from(self, &C64::new(0.0, 0.0))
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Matrix exponential by scaling and squaring with a Taylor core.
    pub fn expm(&self) -> Result<Self> {
        let norm = self.norm();
        let s = if norm > 0.5 {
            (norm / 0.5).log2().ceil() as i32
        } else {
            0
        };
        let scaled = self.scale(C64::new(0.5f64.powi(s), 0.0));
        let mut e = scaled.exp_series(18)?;
        for _ in 0..s {
            e = e.mul(&e);
        }
        Ok(e)
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| (self[(i, j)] - self[(j, i)]).abs() <= tol))
    }

    /// Lower-triangular `L` with `LᵗL = self`, or `None` if not positive definite.
    pub fn cholesky(&self) -> Option<RMat> {
        let n = self.rows;
        let mut l = RMat::real_zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let mut s = self[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)];
                }
                if i == j {
                    if s <= 0.0 {
                        return None;
                    }
                    l[(i, i)] = s.sqrt();
                } else {
                    l[(i, j)] = s / l[(j, j)];
                }
            }
        }
        Some(l)
    }

    /// Cholesky test for positive definiteness of a symmetric matrix.
    pub fn is_positive_definite(&self) -> bool {
        self.is_square() && self.cholesky().is_some()
    }
}

impl CMat {
    pub fn complex_zeros(rows: usize, cols: usize) -> Self {
        Mat::zeros(rows, cols, &C64::new(0.0, 0.0))
    }

    pub fn complex_identity(n: usize) -> Self {
        Mat::identity(n, &C64::new(0.0, 0.0))
    }

    pub fn from_parts(re: &RMat, im: &RMat) -> Result<Self> {
        if re.shape() != im.shape() {
            return Err(Error::Shape(
                "real and imaginary parts differ in shape".into(),
            ));
        }
        Ok(Mat::from_fn(
            re.rows,
            re.cols,
            &C64::new(0.0, 0.0),
            |i, j| C64::new(re[(i, j)], im[(i, j)]),
        ))
    }

    pub fn real_part(&self) -> RMat {
        self.map(&0.0, |z| z.re)
    }

    pub fn imag_part(&self) -> RMat {
        self.map(&0.0, |z| z.im)
    }

    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| (self[(i, j)] - self[(j, i)]).norm() <= tol))
    }

    /// Cholesky test for a Hermitian matrix.
    pub fn is_positive_definite_hermitian(&self) -> bool {
        let n = self.rows;
        let z = C64::new(0.0, 0.0);
        let mut l = vec![z; n * n];
        for i in 0..n {
            for j in 0..=i {
                let mut s = self[(i, j)];
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k].conj();
                }
                if i == j {
                    if s.re <= 0.0 {
                        return false;
                    }
                    l[i * n + i] = C64::new(s.re.sqrt(), 0.0);
                } else {
                    l[i * n + j] = s / l[j * n + j];
                }
            }
        }
        true
    }

    pub fn max_dist(&self, other: &Self) -> f64 {
        assert_eq!(self.shape(), other.shape());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

const SYM_TOL: f64 = 1e-10;

fn check_symmetric(m: &CMat, what: &str) -> Result<()> {
    if !m.is_square() {
        return Err(Error::Shape(format!("{what} must be square")));
    }
    let tol = SYM_TOL * (1.0 + m.max_abs());
    if !m.is_symmetric(tol) {
        return Err(Error::Domain(format!("{what} is not symmetric")));
    }
    Ok(())
}

/// Point of the Siegel upper half plane: `Ω = ᵗΩ`, `Im Ω > 0`.
#[derive(Clone, Debug)]
pub struct SiegelPoint {
    omega: CMat,
}

impl SiegelPoint {
    pub fn new(omega: CMat) -> Result<Self> {
        check_symmetric(&omega, "Ω")?;
        let omega = omega.symmetrize();
        if !omega.imag_part().is_positive_definite() {
            return Err(Error::Domain("Im Ω is not positive definite".into()));
        }
        Ok(SiegelPoint { omega })
    }

    pub fn omega(&self) -> &CMat {
        &self.omega
    }

    pub fn n(&self) -> usize {
        self.omega.rows()
    }

    /// `i I_n`.
    pub fn base(n: usize) -> Self {
        SiegelPoint {
            omega: CMat::complex_identity(n).scale(C64::new(0.0, 1.0)),
        }
    }
}

/// Point `(Ω, Z)` of ℍ_{n,m} with `Z` an `m × n` complex matrix.
#[derive(Clone, Debug)]
pub struct SiegelJacobiPoint {
    omega: CMat,
    z: CMat,
}

impl SiegelJacobiPoint {
    pub fn new(omega: CMat, z: CMat) -> Result<Self> {
        let sp = SiegelPoint::new(omega)?;
        if z.cols() != sp.n() {
            return Err(Error::Shape(format!(
                "Z must have {} columns, has {}",
                sp.n(),
                z.cols()
            )));
        }
        Ok(SiegelJacobiPoint { omega: sp.omega, z })
    }

    pub fn base(n: usize, m: usize) -> Self {
        SiegelJacobiPoint {
            omega: SiegelPoint::base(n).omega,
            z: CMat::complex_zeros(m, n),
        }
    }

    pub fn omega(&self) -> &CMat {
        &self.omega
    }

    pub fn z(&self) -> &CMat {
        &self.z
    }

    pub fn n(&self) -> usize {
        self.omega.rows()
    }

    pub fn m(&self) -> usize {
        self.z.rows()
    }
}

/// Point `(W, η)` of 𝔻_{n,m}: `W = ᵗW`, `I - W̄W > 0`, `η` an `m × n` complex matrix.
#[derive(Clone, Debug)]
pub struct DiskJacobiPoint {
    w: CMat,
    eta: CMat,
}

impl DiskJacobiPoint {
    pub fn new(w: CMat, eta: CMat) -> Result<Self> {
        check_symmetric(&w, "W")?;
        let w = w.symmetrize();
        let n = w.rows();
        if eta.cols() != n {
            return Err(Error::Shape(format!(
                "η must have {n} columns, has {}",
                eta.cols()
            )));
        }
        let gap = CMat::complex_identity(n).sub(&w.conj().mul(&w));
        if !gap.is_positive_definite_hermitian() {
            return Err(Error::Domain("I - W̄W is not positive definite".into()));
        }
        Ok(DiskJacobiPoint { w, eta })
    }

    pub fn origin(n: usize, m: usize) -> Self {
        DiskJacobiPoint {
            w: CMat::complex_zeros(n, n),
            eta: CMat::complex_zeros(m, n),
        }
    }

    pub fn w(&self) -> &CMat {
        &self.w
    }

    pub fn eta(&self) -> &CMat {
        &self.eta
    }

    pub fn n(&self) -> usize {
        self.w.rows()
    }

    pub fn m(&self) -> usize {
        self.eta.rows()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Jet;

    #[test]
    fn inverse_of_real_matrix() {
        let a = RMat::from_rows(&[&[2.0, 1.0], &[1.0, 3.0]]).unwrap();
        let p = a.mul(&a.inverse().unwrap());
        assert!(p.sub(&RMat::real_identity(2)).max_abs() < 1e-15);
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let a = RMat::from_rows(&[&[1.0, 2.0], &[2.0, 4.0]]).unwrap();
        assert!(matches!(a.inverse(), Err(Error::Singular(_))));
    }

    #[test]
    fn jet_matrix_inverse_matches_derivative_of_inverse() {
        // d/dt (A + tB)^{-1} = -A^{-1} B A^{-1}
        let t = Jet::variable(1, 1, 0, 0.0);
        let a = RMat::from_rows(&[&[2.0, 1.0], &[0.5, 3.0]]).unwrap();
        let b = RMat::from_rows(&[&[0.0, 1.0], &[1.0, -1.0]]).unwrap();
        let m = Mat::from_fn(2, 2, &t, |i, j| {
            t.lift(C64::new(a[(i, j)], 0.0)) + t.scale(C64::new(b[(i, j)], 0.0))
        });
        let inv = m.inverse().unwrap();
        let ai = a.inverse().unwrap();
        let d = ai.mul(&b).mul(&ai).neg();
        for i in 0..2 {
            for j in 0..2 {
                assert!((inv[(i, j)].coeff(&[1]).re - d[(i, j)]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn expm_of_rotation_generator() {
        let g = RMat::from_rows(&[&[0.0, -1.0], &[1.0, 0.0]]).unwrap();
        let e = g.scale(C64::new(3.0, 0.0)).expm().unwrap();
        assert!((e[(0, 0)] - 3f64.cos()).abs() < 1e-13);
        assert!((e[(1, 0)] - 3f64.sin()).abs() < 1e-13);
    }

    #[test]
    fn domain_checks() {
        let bad = CMat::complex_identity(2).scale(C64::new(0.0, -1.0));
        assert!(matches!(SiegelPoint::new(bad), Err(Error::Domain(_))));
        let w = CMat::complex_identity(1).scale(C64::new(1.0, 0.0));
        assert!(DiskJacobiPoint::new(w, CMat::complex_zeros(1, 1)).is_err());
    }

    #[test]
    fn det_large_matches_product_of_diagonal() {
        let mut a = RMat::real_identity(5);
        for i in 0..5 {
            a[(i, i)] = (i + 1) as f64;
        }
        a[(0, 4)] = 7.0;
        assert!((a.det().unwrap() - 120.0).abs() < 1e-10);
    }
}
