//! Real coordinates on ℍ_{n,m} and 𝔻_{n,m}.
//!
//! Order: `x_ij` (`i <= j`, row-major), `y_ij` (`i <= j`), `u_kl`, `v_kl`
//! (`k < m`, `l < n`, row-major), where `Ω = X + iY`, `Z = U + iV`. The disk
//! reuses the layout with `W` in place of `Ω` and `η` in place of `Z`.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::linalg::{CMat, Mat};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RealChart {
    n: usize,
    m: usize,
}

impl RealChart {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("n must be at least 1".into()));
        }
        Ok(RealChart { n, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of `i <= j` pairs.
    pub fn sym_len(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    /// `n(n+1) + 2mn`.
    pub fn dim(&self) -> usize {
        2 * self.sym_len() + 2 * self.m * self.n
    }

    fn sym_pos(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        // rows 0..i contribute n, n-1, ..., n-i+1 entries
        i * self.n - i * (i.saturating_sub(1)) / 2 + (j - i)
    }

    pub fn x(&self, i: usize, j: usize) -> usize {
        self.sym_pos(i, j)
    }

    pub fn y(&self, i: usize, j: usize) -> usize {
        self.sym_len() + self.sym_pos(i, j)
    }

    pub fn u(&self, k: usize, l: usize) -> usize {
        2 * self.sym_len() + k * self.n + l
    }

    pub fn v(&self, k: usize, l: usize) -> usize {
        2 * self.sym_len() + self.m * self.n + k * self.n + l
    }

    /// Chart coordinates of a numeric `(Ω, Z)`; only the upper triangle of `Ω` is read.
    pub fn pack(&self, omega: &CMat, z: &CMat) -> Result<Vec<f64>> {
        self.check_shapes(omega.shape(), z.shape())?;
        let mut out = vec![0.0; self.dim()];
        for i in 0..self.n {
            for j in i..self.n {
                out[self.x(i, j)] = omega[(i, j)].re;
                out[self.y(i, j)] = omega[(i, j)].im;
            }
        }
        for k in 0..self.m {
            for l in 0..self.n {
                out[self.u(k, l)] = z[(k, l)].re;
                out[self.v(k, l)] = z[(k, l)].im;
            }
        }
        Ok(out)
    }

    pub fn unpack(&self, coords: &[f64]) -> Result<(CMat, CMat)> {
        if coords.len() != self.dim() {
            return Err(Error::Shape(format!(
                "{} coordinates for a chart of dimension {}",
                coords.len(),
                self.dim()
            )));
        }
        let z0 = C64::new(0.0, 0.0);
        let omega = Mat::from_fn(self.n, self.n, &z0, |i, j| {
            C64::new(coords[self.x(i, j)], coords[self.y(i, j)])
        });
        let z = Mat::from_fn(self.m, self.n, &z0, |k, l| {
            C64::new(coords[self.u(k, l)], coords[self.v(k, l)])
        });
        Ok((omega, z))
    }

    /// Complex matrices assembled from coordinate scalars (jets or numbers).
    pub fn unpack_generic<S: Scalar>(&self, coords: &[S]) -> Result<(Mat<S>, Mat<S>)> {
        if coords.len() != self.dim() {
            return Err(Error::Shape(format!(
                "{} coordinates for a chart of dimension {}",
                coords.len(),
                self.dim()
            )));
        }
        let i = C64::new(0.0, 1.0);
        let zero = coords[0].zero_like();
        let omega = Mat::from_fn(self.n, self.n, &zero, |a, b| {
            coords[self.x(a, b)].clone() + coords[self.y(a, b)].scale(i)
        });
        let z = Mat::from_fn(self.m, self.n, &zero, |k, l| {
            coords[self.u(k, l)].clone() + coords[self.v(k, l)].scale(i)
        });
        Ok((omega, z))
    }

    /// Coordinates of generic `(Ω, Z)` via real and imaginary parts.
    pub fn pack_generic<S: Scalar>(&self, omega: &Mat<S>, z: &Mat<S>) -> Result<Vec<S>> {
        self.check_shapes(omega.shape(), z.shape())?;
        let zero = omega.zero_elem().clone();
        let mut out = vec![zero; self.dim()];
        for i in 0..self.n {
            for j in i..self.n {
                out[self.x(i, j)] = omega[(i, j)].re();
                out[self.y(i, j)] = omega[(i, j)].im();
            }
        }
        for k in 0..self.m {
            for l in 0..self.n {
                out[self.u(k, l)] = z[(k, l)].re();
                out[self.v(k, l)] = z[(k, l)].im();
            }
        }
        Ok(out)
    }

    /// Jets of every coordinate expanded at `point`.
    pub fn coordinate_jets(&self, point: &[f64], order: usize) -> Result<Vec<Jet>> {
        if point.len() != self.dim() {
            return Err(Error::Shape(format!(
                "{} coordinates for a chart of dimension {}",
                point.len(),
                self.dim()
            )));
        }
        Ok(Jet::coordinates(point, order))
    }

    /// Human readable name of coordinate `idx`.
    pub fn label(&self, idx: usize) -> String {
        let s = self.sym_len();
        let mn = self.m * self.n;
        let pair = |p: usize| {
            let mut k = p;
            for i in 0..self.n {
                let row = self.n - i;
                if k < row {
                    return (i, i + k);
                }
                k -= row;
            }
            unreachable!()
        };
        if idx < s {
            let (i, j) = pair(idx);
            format!("x{}{}", i + 1, j + 1)
        } else if idx < 2 * s {
            let (i, j) = pair(idx - s);
            format!("y{}{}", i + 1, j + 1)
        } else if idx < 2 * s + mn {
            let r = idx - 2 * s;
            format!("u{}{}", r / self.n + 1, r % self.n + 1)
        } else {
            let r = idx - 2 * s - mn;
            format!("v{}{}", r / self.n + 1, r % self.n + 1)
        }
    }

    fn check_shapes(&self, omega: (usize, usize), z: (usize, usize)) -> Result<()> {
        if omega != (self.n, self.n) || z != (self.m, self.n) {
            return Err(Error::Shape(format!(
                "expected {n}x{n} and {m}x{n}, got {omega:?} and {z:?}",
                n = self.n,
                m = self.m
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_formula() {
        for n in 1..4 {
            for m in 0..4 {
                let c = RealChart::new(n, m).unwrap();
                assert_eq!(c.dim(), n * (n + 1) + 2 * m * n);
            }
        }
    }

    #[test]
    fn indices_are_a_bijection() {
        let c = RealChart::new(3, 2).unwrap();
        let mut seen = vec![false; c.dim()];
        for i in 0..3 {
            for j in i..3 {
                seen[c.x(i, j)] = true;
                seen[c.y(i, j)] = true;
            }
        }
        for k in 0..2 {
            for l in 0..3 {
                seen[c.u(k, l)] = true;
                seen[c.v(k, l)] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
        assert_eq!(c.label(c.x(1, 2)), "x23");
        assert_eq!(c.label(c.v(1, 0)), "v21");
    }

    #[test]
    fn pack_unpack_roundtrip() {
        let c = RealChart::new(2, 1).unwrap();
        let p: Vec<f64> = (0..c.dim()).map(|i| i as f64 * 0.5 - 1.0).collect();
        let (o, z) = c.unpack(&p).unwrap();
        assert_eq!(c.pack(&o, &z).unwrap(), p);
        assert!(o.is_symmetric(0.0));
    }
}
