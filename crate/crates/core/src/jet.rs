//! Truncated multivariate Taylor polynomials with complex coefficients.
//!
//! A [`Jet`] of order `k` in `N` real variables stores every coefficient
//! `c_α` with `|α| <= k`, in graded-lexicographic order. Because the order is
//! graded, the coefficients of the truncation to any lower order form a
//! prefix of the vector. Index tables for multiplication and differentiation
//! are shared per `(N, k)` through a global cache.
//!
//! The variables are real displacements `t` around an expansion point, so the
//! real part, imaginary part and complex conjugate act coefficient-wise.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Monomial bookkeeping for jets in `nvars` variables up to `order`.
pub struct JetSpace {
    nvars: usize,
    order: usize,
    exps: Vec<Vec<u8>>,
    degree: Vec<usize>,
    // start[d] is the index of the first monomial of degree d; start[order + 1] is the length.
    start: Vec<usize>,
    lookup: HashMap<Vec<u8>, u32>,
    // mul[i][j] = index of exps[i] + exps[j], for every j with deg(i) + deg(j) <= order.
    mul: Vec<Vec<u32>>,
    // up[v][i] = index of exps[i] + e_v, for every i with deg(i) < order.
    up: Vec<Vec<u32>>,
}

fn compositions(total: usize, parts: usize, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if parts == 1 {
        prefix.push(total as u8);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in (0..=total).rev() {
        prefix.push(first as u8);
        compositions(total - first, parts - 1, prefix, out);
        prefix.pop();
    }
}

impl JetSpace {
    fn build(nvars: usize, order: usize) -> JetSpace {
        let mut exps = Vec::new();
        let mut degree = Vec::new();
        let mut start = Vec::with_capacity(order + 2);
        for d in 0..=order {
            start.push(exps.len());
            if nvars == 0 {
                if d == 0 {
                    exps.push(Vec::new());
                    degree.push(0);
                }
                continue;
            }
            let mut block = Vec::new();
            compositions(d, nvars, &mut Vec::with_capacity(nvars), &mut block);
            degree.extend(std::iter::repeat_n(d, block.len()));
            exps.extend(block);
        }
        start.push(exps.len());
        let lookup: HashMap<Vec<u8>, u32> = exps
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        let mut mul = Vec::with_capacity(exps.len());
        let mut sum = vec![0u8; nvars];
        for (i, ei) in exps.iter().enumerate() {
            let lim = start[order - degree[i] + 1];
            let mut row = Vec::with_capacity(lim);
            for ej in &exps[..lim] {
                for v in 0..nvars {
                    sum[v] = ei[v] + ej[v];
                }
                row.push(lookup[&sum]);
            }
            mul.push(row);
        }
        let mut up = Vec::with_capacity(nvars);
        for v in 0..nvars {
            let lim = start[order];
            let mut row = Vec::with_capacity(lim);
            for e in &exps[..lim] {
                let mut s = e.clone();
                s[v] += 1;
                row.push(lookup[&s]);
            }
            up.push(row);
        }
        JetSpace {
            nvars,
            order,
            exps,
            degree,
            start,
            lookup,
            mul,
            up,
        }
    }

    /// Shared space for `nvars` variables truncated at `order`.
    pub fn get(nvars: usize, order: usize) -> Arc<JetSpace> {
        type Cache = Mutex<HashMap<(usize, usize), Arc<JetSpace>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(s) = cache
            .lock()
            .expect("jet cache poisoned")
            .get(&(nvars, order))
        {
            return s.clone();
        }
        let built = Arc::new(JetSpace::build(nvars, order));
        cache
            .lock()
            .expect("jet cache poisoned")
            .entry((nvars, order))
            .or_insert(built)
            .clone()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of monomials of degree at most `order`.
    pub fn len_for(&self, order: usize) -> usize {
        self.start[order + 1]
    }

    pub fn exponents(&self, idx: usize) -> &[u8] {
        &self.exps[idx]
    }

    pub fn degree_of(&self, idx: usize) -> usize {
        self.degree[idx]
    }

    pub fn index_of(&self, exps: &[u8]) -> Option<usize> {
        self.lookup.get(exps).map(|&i| i as usize)
    }
}

/// Truncated Taylor polynomial in real variables with complex coefficients.
#[derive(Clone)]
pub struct Jet {
    space: Arc<JetSpace>,
    order: usize,
    coeffs: Vec<C64>,
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Jet(nvars={}, order={}; ", self.space.nvars, self.order)?;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c != ZERO {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "({c})t^{:?}", self.space.exps[i])?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

impl Jet {
    pub fn constant(nvars: usize, order: usize, value: C64) -> Jet {
        let space = JetSpace::get(nvars, order);
        let mut coeffs = vec![ZERO; space.len_for(order)];
        coeffs[0] = value;
        Jet {
            space,
            order,
            coeffs,
        }
    }

    pub fn zero(nvars: usize, order: usize) -> Jet {
        Jet::constant(nvars, order, ZERO)
    }

    /// The jet of `base + t_index`.
    pub fn variable(nvars: usize, order: usize, index: usize, base: f64) -> Jet {
        assert!(
            index < nvars,
            "variable index {index} out of range for {nvars} variables"
        );
        let mut j = Jet::constant(nvars, order, C64::new(base, 0.0));
        if order >= 1 {
            j.coeffs[1 + index] = C64::new(1.0, 0.0);
        }
        j
    }

    /// Jets of all chart coordinates at `point`.
    pub fn coordinates(point: &[f64], order: usize) -> Vec<Jet> {
        let n = point.len();
        (0..n)
            .map(|i| Jet::variable(n, order, i, point[i]))
            .collect()
    }

    /// Builds a jet from coefficients listed in graded-lexicographic order.
    pub fn from_coeffs(nvars: usize, order: usize, coeffs: Vec<C64>) -> Result<Jet> {
        let space = JetSpace::get(nvars, order);
        let need = space.len_for(order);
        if coeffs.len() != need {
            return Err(Error::Shape(format!(
                "expected {need} coefficients for order {order} in {nvars} variables, got {}",
                coeffs.len()
            )));
        }
        Ok(Jet {
            space,
            order,
            coeffs,
        })
    }

    pub fn nvars(&self) -> usize {
        self.space.nvars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn space(&self) -> &Arc<JetSpace> {
        &self.space
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Constant term.
    pub fn value(&self) -> C64 {
        self.coeffs[0]
    }

    /// Taylor coefficient `c_α`; zero when `|α|` exceeds the order.
    pub fn coeff(&self, exps: &[u8]) -> C64 {
        match self.space.index_of(exps) {
            Some(i) if i < self.coeffs.len() => self.coeffs[i],
            _ => ZERO,
        }
    }

    /// Partial derivative `∂^α f` at the expansion point, i.e. `α! c_α`.
    pub fn derivative(&self, exps: &[u8]) -> C64 {
        let fact: f64 = exps
            .iter()
            .map(|&e| (1..=e as u64).product::<u64>() as f64)
            .product();
        self.coeff(exps) * fact
    }

    /// A jet with the same variables and order holding a constant.
    pub fn lift(&self, value: C64) -> Jet {
        let mut coeffs = vec![ZERO; self.coeffs.len()];
        coeffs[0] = value;
        Jet {
            space: self.space.clone(),
            order: self.order,
            coeffs,
        }
    }

    pub fn truncate(&self, order: usize) -> Jet {
        if order >= self.order {
            return self.clone();
        }
        Jet {
            space: self.space.clone(),
            order,
            coeffs: self.coeffs[..self.space.len_for(order)].to_vec(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(C64) -> C64) -> Jet {
        Jet {
            space: self.space.clone(),
            order: self.order,
            coeffs: self.coeffs.iter().map(|&c| f(c)).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Jet {
        self.map_coeffs(|c| c * s)
    }

    pub fn conj(&self) -> Jet {
        self.map_coeffs(|c| c.conj())
    }

    pub fn re(&self) -> Jet {
        self.map_coeffs(|c| C64::new(c.re, 0.0))
    }

    pub fn im(&self) -> Jet {
        self.map_coeffs(|c| C64::new(c.im, 0.0))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn check_vars(&self, other: &Jet) {
        assert_eq!(
            self.space.nvars, other.space.nvars,
            "jet arithmetic on different variable counts"
        );
    }

    fn wider<'a>(&'a self, other: &'a Jet) -> &'a Arc<JetSpace> {
        if self.space.order >= other.space.order {
            &self.space
        } else {
            &other.space
        }
    }

    fn zip(&self, other: &Jet, f: impl Fn(C64, C64) -> C64) -> Jet {
        self.check_vars(other);
        let order = self.order.min(other.order);
        let space = self.wider(other).clone();
        let len = space.len_for(order);
        let coeffs = (0..len)
            .map(|i| f(self.coeffs[i], other.coeffs[i]))
            .collect();
        Jet {
            space,
            order,
            coeffs,
        }
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul_jet(&self, other: &Jet) -> Jet {
        self.check_vars(other);
        let order = self.order.min(other.order);
        let space = self.wider(other).clone();
        let len = space.len_for(order);
        let nnz = |j: &Jet| j.coeffs[..len].iter().filter(|c| **c != ZERO).count();
        let (a, b) = if nnz(self) <= nnz(other) {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = vec![ZERO; len];
        for i in 0..len {
            let ai = a.coeffs[i];
            if ai == ZERO {
                continue;
            }
            let lim = space.len_for(order - space.degree[i]);
            let row = &space.mul[i][..lim];
            for (&k, bj) in row.iter().zip(&b.coeffs[..lim]) {
                out[k as usize] += ai * bj;
            }
        }
        Jet {
            space,
            order,
            coeffs: out,
        }
    }

    /// `g ∘ self` for a univariate `g` given by its Taylor coefficients `c_k`
    /// at `self.value()`; missing coefficients count as zero.
    pub fn compose_taylor(&self, c: &[C64]) -> Jet {
        let mut full = vec![ZERO; self.order + 1];
        for (d, s) in full.iter_mut().zip(c) {
            *d = *s;
        }
        self.series(&full)
    }

    /// `Σ_k c_k h^k` where `h = self - self.value()`; `c` must have `order + 1` entries.
    fn series(&self, c: &[C64]) -> Jet {
        let mut h = self.clone();
        h.coeffs[0] = ZERO;
        let mut acc = self.lift(c[self.order]);
        for k in (0..self.order).rev() {
            acc = acc.mul_jet(&h);
            acc.coeffs[0] += c[k];
        }
        acc
    }

    pub fn recip(&self) -> Result<Jet> {
        let a0 = self.value();
        if a0 == ZERO {
            return Err(Error::ZeroConstantTerm);
        }
        let inv = 1.0 / a0;
        let mut c = Vec::with_capacity(self.order + 1);
        let mut p = inv;
        for _ in 0..=self.order {
            c.push(p);
            p = -p * inv;
        }
        Ok(self.series(&c))
    }

    pub fn exp(&self) -> Jet {
        let e = self.value().exp();
        let mut c = Vec::with_capacity(self.order + 1);
        let mut p = e;
        for k in 0..=self.order {
            c.push(p);
            p /= (k + 1) as f64;
        }
        self.series(&c)
    }

    /// Principal branch of `self^s`.
    pub fn powc(&self, s: C64) -> Result<Jet> {
        let a0 = self.value();
        if a0 == ZERO {
            return Err(Error::ZeroConstantTerm);
        }
        let inv = 1.0 / a0;
        let mut c = Vec::with_capacity(self.order + 1);
        let mut p = a0.powc(s);
        for k in 0..=self.order {
            c.push(p);
            p = p * (s - k as f64) / ((k + 1) as f64) * inv;
        }
        Ok(self.series(&c))
    }

    pub fn powi(&self, k: i32) -> Result<Jet> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let mut acc = self.lift(C64::new(1.0, 0.0));
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul_jet(&base);
        }
        Ok(acc)
    }

    pub fn sqrt(&self) -> Result<Jet> {
        self.powc(C64::new(0.5, 0.0))
    }

    pub fn ln(&self) -> Result<Jet> {
        let a0 = self.value();
        if a0 == ZERO {
            return Err(Error::ZeroConstantTerm);
        }
        let inv = 1.0 / a0;
        let mut c = Vec::with_capacity(self.order + 1);
        c.push(a0.ln());
        let mut p = inv;
        for k in 1..=self.order {
            c.push(p / k as f64);
            p = -p * inv;
        }
        Ok(self.series(&c))
    }

    /// `∂f/∂t_var`, one order lower.
    pub fn partial(&self, var: usize) -> Result<Jet> {
        if self.order == 0 {
            return Err(Error::JetOrder { have: 0, need: 1 });
        }
        if var >= self.space.nvars {
            return Err(Error::Invalid(format!("variable {var} out of range")));
        }
        let order = self.order - 1;
        let len = self.space.len_for(order);
        let up = &self.space.up[var];
        let coeffs = (0..len)
            .map(|i| self.coeffs[up[i] as usize] * (self.space.exps[i][var] as f64 + 1.0))
            .collect();
        Ok(Jet {
            space: self.space.clone(),
            order,
            coeffs,
        })
    }

    /// Largest coefficient difference over the common order.
    pub fn distance(&self, other: &Jet) -> f64 {
        self.zip(other, |a, b| a - b).max_abs()
    }
}

impl Add<&Jet> for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub<&Jet> for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Mul<&Jet> for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        self.mul_jet(rhs)
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.map_coeffs(|c| -c)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Jet> for Jet {
            type Output = Jet;
            fn $m(self, rhs: Jet) -> Jet {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Jet> for Jet {
            type Output = Jet;
            fn $m(self, rhs: &Jet) -> Jet {
                (&self).$m(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        -&self
    }
}

impl AddAssign<&Jet> for Jet {
    fn add_assign(&mut self, rhs: &Jet) {
        if rhs.order >= self.order && Arc::ptr_eq(&self.space, &rhs.space) {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a += b;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Jet> for Jet {
    fn sub_assign(&mut self, rhs: &Jet) {
        if rhs.order >= self.order && Arc::ptr_eq(&self.space, &rhs.space) {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a -= b;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn monomial_counts_match_binomials() {
        let s = JetSpace::get(3, 4);
        // C(3 + 4, 4) = 35
        assert_eq!(s.len_for(4), 35);
        assert_eq!(s.len_for(1), 4);
        assert_eq!(s.exponents(1), &[1, 0, 0]);
    }

    #[test]
    fn product_of_variables() {
        let x = Jet::variable(2, 3, 0, 1.0);
        let y = Jet::variable(2, 3, 1, 2.0);
        let p = &x * &y;
        assert_eq!(p.value(), c(2.0));
        assert_eq!(p.coeff(&[1, 0]), c(2.0));
        assert_eq!(p.coeff(&[0, 1]), c(1.0));
        assert_eq!(p.coeff(&[1, 1]), c(1.0));
        assert_eq!(p.coeff(&[2, 0]), c(0.0));
    }

    #[test]
    fn exp_and_ln_invert() {
        let x = Jet::variable(1, 6, 0, 0.3);
        let e = x.exp();
        for k in 0..=6u8 {
            let fact: f64 = (1..=k as u64).product::<u64>() as f64;
            assert!((e.coeff(&[k]) - c(0.3f64.exp() / fact)).norm() < 1e-14);
        }
        assert!(e.ln().unwrap().distance(&x) < 1e-14);
    }

    #[test]
    fn recip_of_zero_constant_fails() {
        let x = Jet::variable(1, 2, 0, 0.0);
        assert_eq!(x.recip().unwrap_err(), Error::ZeroConstantTerm);
    }

    #[test]
    fn partial_lowers_order() {
        let x = Jet::variable(2, 3, 0, 0.5);
        let f = &(&x * &x) * &x;
        let d = f.partial(0).unwrap();
        assert_eq!(d.order(), 2);
        assert!((d.value() - c(0.75)).norm() < 1e-15);
        assert!((d.coeff(&[1, 0]) - c(3.0)).norm() < 1e-15);
    }

    #[test]
    fn mixed_orders_truncate_to_min() {
        let a = Jet::variable(2, 4, 0, 1.0);
        let b = Jet::variable(2, 2, 1, 1.0);
        assert_eq!((&a * &b).order(), 2);
        assert_eq!((&a + &b).order(), 2);
    }
}
