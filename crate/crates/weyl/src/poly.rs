use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use jacobi_core::jet::Jet;
use jacobi_core::C64;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exponent vector ordered graded-lexicographically: total degree first, then
/// lexicographic with the first variable most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Ordered variable names shared by every polynomial of one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Vars(names.iter().map(|s| s.as_ref().to_string()).collect())
    }

    /// `x, y, u, v`.
    pub fn xyuv() -> Self {
        Vars::new(&["x", "y", "u", "v"])
    }

    /// `x, y, u1, v1, ..., um, vm`.
    pub fn xy_uv(m: usize) -> Self {
        let mut names = vec!["x".to_string(), "y".to_string()];
        for k in 1..=m {
            names.push(format!("u{k}"));
            names.push(format!("v{k}"));
        }
        Vars(names.into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub(crate) fn check(&self, o: &Vars) -> Result<()> {
        if self == o {
            Ok(())
        } else {
            Err(Error::VariableMismatch(self.0.to_vec(), o.0.to_vec()))
        }
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Polynomial with exact rational coefficients. Zero coefficients are never
/// stored, so equal polynomials have equal term maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, BigRational>,
}

impl RationalPoly {
    pub fn zero(vars: &Vars) -> Self {
        RationalPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, c: BigRational) -> Self {
        Self::monomial(vars, Monomial::one(vars.len()), c)
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, BigRational::one())
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        Self::monomial(vars, Monomial::var(vars.len(), i), BigRational::one())
    }

    /// Variable by name; panics on an unknown name, which is a programming error.
    pub fn named(vars: &Vars, name: &str) -> Self {
        let i = vars
            .index(name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        Self::var(vars, i)
    }

    pub fn monomial(vars: &Vars, m: Monomial, c: BigRational) -> Self {
        assert_eq!(m.0.len(), vars.len(), "exponent length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        RationalPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    fn insert(terms: &mut BTreeMap<Monomial, BigRational>, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.vars.check(&o.vars)?;
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            Self::insert(&mut terms, m.clone(), c.clone());
        }
        Ok(RationalPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.neg())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.vars.check(&o.vars)?;
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                Self::insert(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        Ok(RationalPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Panicking forms for polynomials known to share a ring.
    pub fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("same ring")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.try_sub(o).expect("same ring")
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("same ring")
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        RationalPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(&self.vars), |acc, _| acc.mul(self))
    }

    /// `∂/∂x_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            Self::insert(&mut terms, m2, c * BigRational::from_integer(e.into()));
        }
        RationalPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// `∂^α` for a multi-index `α`.
    pub fn derivative_multi(&self, alpha: &[u32]) -> Self {
        let mut p = self.clone();
        for (i, &a) in alpha.iter().enumerate() {
            for _ in 0..a {
                p = p.derivative(i);
            }
        }
        p
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mono: f64 =
                    m.0.iter()
                        .zip(point)
                        .map(|(&e, &x)| x.powi(e as i32))
                        .product();
                c.to_f64().unwrap_or(f64::NAN) * mono
            })
            .sum()
    }

    /// Evaluates on coordinate jets, one per variable.
    pub fn eval_jet(&self, coords: &[Jet]) -> Result<Jet> {
        if coords.len() != self.vars.len() {
            return Err(Error::Invalid(format!(
                "{} coordinates for {} variables",
                coords.len(),
                self.vars.len()
            )));
        }
        let zero = coords[0].lift(C64::new(0.0, 0.0));
        let mut acc = zero.clone();
        for (m, c) in &self.terms {
            let mut t = zero.lift(C64::new(c.to_f64().unwrap_or(f64::NAN), 0.0));
            for (x, &e) in coords.iter().zip(&m.0) {
                for _ in 0..e {
                    t = &t * x;
                }
            }
            acc += &t;
        }
        Ok(acc)
    }
}

fn fmt_monomial(vars: &Vars, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (name, &e) in vars.names().iter().zip(&m.0) {
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join(" ")
}

/// Writes `c·body` as a signed summand; `first` suppresses a leading `+`.
pub(crate) fn fmt_term(c: &BigRational, body: &str, first: bool) -> String {
    let sign = if c.is_negative() {
        if first {
            "-"
        } else {
            " - "
        }
    } else if first {
        ""
    } else {
        " + "
    };
    let a = c.abs();
    let coef = if a.is_one() && !body.is_empty() {
        String::new()
    } else if a.is_integer() {
        a.to_string()
    } else {
        format!("({a})")
    };
    let sep = if !coef.is_empty() && !body.is_empty() {
        " "
    } else {
        ""
    };
    format!("{sign}{coef}{sep}{body}")
}

impl fmt::Display for RationalPoly {
    /// Highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            write!(f, "{}", fmt_term(c, &fmt_monomial(&self.vars, m), i == 0))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let a = Monomial(vec![0, 2, 0, 0]);
        let b = Monomial(vec![1, 0, 0, 0]);
        let c = Monomial(vec![1, 1, 0, 0]);
        assert!(b < a, "lower degree first");
        assert!(a < c);
        assert!(Monomial(vec![0, 1]) < Monomial(vec![1, 0]));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let v = Vars::xyuv();
        let x = RationalPoly::named(&v, "x");
        let p = x.add(&x.neg());
        assert!(p.is_zero());
        assert_eq!(p, RationalPoly::zero(&v));
    }

    #[test]
    fn derivative_of_power() {
        let v = Vars::xyuv();
        let y = RationalPoly::named(&v, "y");
        let d = y.pow(3).derivative(1);
        assert_eq!(d, y.pow(2).scale(&rat(3, 1)));
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = RationalPoly::one(&Vars::xyuv());
        let b = RationalPoly::one(&Vars::xy_uv(2));
        assert!(matches!(a.try_add(&b), Err(Error::VariableMismatch(..))));
    }

    #[test]
    fn display() {
        let v = Vars::xyuv();
        let p = RationalPoly::named(&v, "y")
            .pow(2)
            .scale(&rat(-1, 2))
            .add(&RationalPoly::one(&v));
        assert_eq!(p.to_string(), "-(1/2) y^2 + 1");
    }
}
