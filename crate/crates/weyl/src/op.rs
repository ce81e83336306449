use std::collections::BTreeMap;
use std::fmt;

use jacobi_core::jet::Jet;
use jacobi_core::testfn::ChartFunction;
use jacobi_core::C64;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{fmt_term, Monomial, RationalPoly, Vars};

/// `Σ_α p_α ∂^α` with every derivative to the right of its coefficient.
/// Terms with zero coefficient are never stored, so the term map is the
/// normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylOperator {
    vars: Vars,
    terms: BTreeMap<Monomial, RationalPoly>,
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// All `γ <= α` componentwise.
fn sub_indices(alpha: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &a in alpha {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=a).map(move |g| {
                    let mut p = prefix.clone();
                    p.push(g);
                    p
                })
            })
            .collect();
    }
    out
}

impl WeylOperator {
    pub fn zero(vars: &Vars) -> Self {
        WeylOperator {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// Multiplication by `p`.
    pub fn from_poly(p: &RationalPoly) -> Self {
        Self::term(p, &vec![0; p.vars().len()])
    }

    pub fn identity(vars: &Vars) -> Self {
        Self::from_poly(&RationalPoly::one(vars))
    }

    /// `p ∂^α`.
    pub fn term(p: &RationalPoly, alpha: &[u32]) -> Self {
        let vars = p.vars().clone();
        assert_eq!(alpha.len(), vars.len(), "multi-index length");
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(Monomial(alpha.to_vec()), p.clone());
        }
        WeylOperator { vars, terms }
    }

    /// `∂/∂x_i`.
    pub fn partial(vars: &Vars, i: usize) -> Self {
        let mut alpha = vec![0; vars.len()];
        alpha[i] = 1;
        Self::term(&RationalPoly::one(vars), &alpha)
    }

    /// `∂/∂name`; panics on an unknown name.
    pub fn d(vars: &Vars, name: &str) -> Self {
        let i = vars
            .index(name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        Self::partial(vars, i)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, RationalPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest derivative order, `None` for the zero operator.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    fn insert(terms: &mut BTreeMap<Monomial, RationalPoly>, m: Monomial, p: RationalPoly) {
        if p.is_zero() {
            return;
        }
        match terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&p);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Rebuilds the term map from scratch. On a value built by this type
    /// this is the identity.
    pub fn normalize(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (m, p) in &self.terms {
            Self::insert(&mut terms, m.clone(), p.clone());
        }
        WeylOperator {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.vars.check(&o.vars)?;
        let mut terms = self.terms.clone();
        for (m, p) in &o.terms {
            Self::insert(&mut terms, m.clone(), p.clone());
        }
        Ok(WeylOperator {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.neg())
    }

    /// `A ∘ B` through `∂^α ∘ q = Σ_{γ<=α} C(α,γ) (∂^γ q) ∂^{α-γ}`.
    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.vars.check(&o.vars)?;
        let mut terms = BTreeMap::new();
        for (alpha, p) in &self.terms {
            for gamma in sub_indices(&alpha.0) {
                let c: BigInt = alpha
                    .0
                    .iter()
                    .zip(&gamma)
                    .map(|(&a, &g)| binomial(a, g))
                    .product();
                let c = BigRational::from_integer(c);
                let rest: Vec<u32> = alpha.0.iter().zip(&gamma).map(|(a, g)| a - g).collect();
                for (beta, q) in &o.terms {
                    let dq = q.derivative_multi(&gamma);
                    if dq.is_zero() {
                        continue;
                    }
                    let coef = p.mul(&dq).scale(&c);
                    let m = Monomial(rest.iter().zip(&beta.0).map(|(a, b)| a + b).collect());
                    Self::insert(&mut terms, m, coef);
                }
            }
        }
        Ok(WeylOperator {
            vars: self.vars.clone(),
            terms,
        })
    }

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
        WeylOperator {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, p)| (m.clone(), p.scale(c)))
                .collect(),
        }
    }

    /// `AB - BA`.
    pub fn commutator(&self, o: &Self) -> Result<Self> {
        self.try_mul(o)?.try_sub(&o.try_mul(self)?)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(&self.vars), |acc, _| acc.mul(self))
    }

    /// The operator applied to a polynomial.
    pub fn apply(&self, f: &RationalPoly) -> Result<RationalPoly> {
        self.vars.check(f.vars())?;
        let mut acc = RationalPoly::zero(&self.vars);
        for (alpha, p) in &self.terms {
            acc = acc.add(&p.mul(&f.derivative_multi(&alpha.0)));
        }
        Ok(acc)
    }

    /// `(D f)(point)` with derivatives of `f` taken from a jet; the variables
    /// are identified with the chart coordinates in order.
    pub fn evaluate(&self, point: &[f64], f: &dyn ChartFunction) -> Result<C64> {
        if point.len() != self.vars.len() {
            return Err(Error::Invalid(format!(
                "{} coordinates for {} variables",
                point.len(),
                self.vars.len()
            )));
        }
        let order = self.order().unwrap_or(0) as usize;
        let jet = f.jet(&Jet::coordinates(point, order))?;
        let mut acc = C64::new(0.0, 0.0);
        for (alpha, p) in &self.terms {
            let exps: Vec<u8> = alpha.0.iter().map(|&a| a as u8).collect();
            acc += jet.derivative(&exps) * p.eval_f64(point);
        }
        Ok(acc)
    }
}

fn fmt_derivative(vars: &Vars, alpha: &Monomial) -> String {
    let mut parts = Vec::new();
    for (name, &e) in vars.names().iter().zip(&alpha.0) {
        match e {
            0 => {}
            1 => parts.push(format!("∂{name}")),
            _ => parts.push(format!("∂{name}^{e}")),
        }
    }
    parts.join(" ")
}

impl fmt::Display for WeylOperator {
    /// Highest order first; a coefficient with several terms is bracketed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (alpha, p) in self.terms.iter().rev() {
            let d = fmt_derivative(&self.vars, alpha);
            if p.terms().len() == 1 {
                let (m, c) = p.terms().iter().next().expect("one term");
                let mono = RationalPoly::monomial(&self.vars, m.clone(), BigRational::one());
                let mono = if m.degree() == 0 {
                    String::new()
                } else {
                    mono.to_string()
                };
                let body = [mono, d]
                    .iter()
                    .filter(|s| !s.is_empty())
                    .cloned()
                    .collect::<Vec<_>>()
                    .join(" ");
                write!(f, "{}", fmt_term(c, &body, first))?;
            } else {
                let body = if d.is_empty() {
                    format!("({p})")
                } else {
                    format!("({p}) {d}")
                };
                write!(f, "{}", fmt_term(&BigRational::one(), &body, first))?;
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn x(v: &Vars) -> WeylOperator {
        WeylOperator::from_poly(&RationalPoly::named(v, "x"))
    }

    #[test]
    fn canonical_commutation() {
        let v = Vars::xyuv();
        let dx = WeylOperator::d(&v, "x");
        let expected = x(&v).mul(&dx).add(&WeylOperator::identity(&v));
        assert_eq!(dx.mul(&x(&v)), expected);
        assert_eq!(dx.commutator(&x(&v)).unwrap(), WeylOperator::identity(&v));
    }

    #[test]
    fn derivative_passes_other_variables() {
        let v = Vars::xyuv();
        let dx = WeylOperator::d(&v, "x");
        let y = WeylOperator::from_poly(&RationalPoly::named(&v, "y"));
        assert_eq!(dx.mul(&y), y.mul(&dx));
    }

    #[test]
    fn euler_operator_squared() {
        let v = Vars::xyuv();
        let e = x(&v).mul(&WeylOperator::d(&v, "x"));
        let x2 = RationalPoly::named(&v, "x").pow(2);
        let expected = WeylOperator::term(&x2, &[2, 0, 0, 0]).add(&e);
        assert_eq!(e.pow(2), expected);
    }

    #[test]
    fn display() {
        let v = Vars::xyuv();
        let y2 = RationalPoly::named(&v, "y").pow(2);
        let op = WeylOperator::term(&y2, &[0, 1, 2, 0])
            .sub(&WeylOperator::term(&y2.scale(&rat(2, 1)), &[1, 0, 1, 1]))
            .add(&WeylOperator::identity(&v));
        assert_eq!(op.to_string(), "-2 y^2 ∂x ∂u ∂v + y^2 ∂y ∂u^2 + 1");
    }

    #[test]
    fn normalize_is_idempotent() {
        let v = Vars::xyuv();
        let e = x(&v).mul(&WeylOperator::d(&v, "x")).pow(3);
        assert_eq!(e.normalize(), e);
    }
}
